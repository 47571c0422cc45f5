//! Structure constants of the sixteen quadratic operators, their
//! Hermiticity pattern, and the central element on each sector.

use fuzzy_monopole::verify::{generator_hermiticity, verify_central_element, verify_su22_closure, CheckOptions};
use fuzzy_monopole::GeneratorLabel;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n_max = 6;
    let closure = verify_su22_closure(0, n_max, CheckOptions::default())?;
    println!("rank {} at depth {}, worst residual {:.2e}", closure.rank, closure.depth, closure.report.residual);
    println!("antisymmetry deviation {:.1e}, pattern {:?}", closure.antisymmetry_deviation, closure.reality);
    for (a, b) in [
        (GeneratorLabel::S12, GeneratorLabel::S23),
        (GeneratorLabel::S05, GeneratorLabel::S01),
        (GeneratorLabel::S14, GeneratorLabel::S24),
    ] {
        let e = closure.entry(a, b).expect("pair in table");
        let terms: Vec<String> =
            e.coefficients.iter().map(|c| format!("({:+.3}{:+.3}i) {}", c.re, c.im, c.label)).collect();
        println!("[{a}, {b}] = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    }

    for h in generator_hermiticity(1, n_max, 1.0, CheckOptions::default())? {
        println!(
            "{:<5} weighted {:.1e}  r^-1 S {:.1e}  S-S^+ {:.1e}  S+S^+ {:.1e}",
            h.label.to_string(),
            h.weighted,
            h.dressed,
            h.hilbert_schmidt,
            h.hilbert_schmidt_anti
        );
    }

    for kappa in -2..=2 {
        let r = verify_central_element(kappa, n_max)?;
        println!("C + 2 on kappa' = {kappa:+}: residual {:.1e}", r.residual);
    }
    // at kappa' = 2 the central element vanishes identically and the span drops rank
    match verify_su22_closure(2, n_max, CheckOptions::default()) {
        Ok(c) => println!("kappa' = 2: rank {}", c.rank),
        Err(e) => println!("kappa' = 2: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
