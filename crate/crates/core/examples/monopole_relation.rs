//! The velocity commutator on every sector -2..=2: a monopole of charge
//! proportional to kappa' appears on the interior of the truncation.

use fuzzy_monopole::verify::{verify_monopole_commutator, CheckOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (lambda, n_max) = (1.0, 8);
    for kappa in -2..=2 {
        let check = verify_monopole_commutator(kappa, lambda, n_max, CheckOptions::default())?;
        let worst = check
            .reports
            .iter()
            .filter(|r| r.ordering.as_deref() == Some(check.selected.name()))
            .map(|r| r.residual)
            .fold(0.0, f64::max);
        println!(
            "kappa' = {kappa:+}: worst residual {worst:.2e}, rhs scale {:.3}, ordering {}, {} excluded, pass = {}",
            check.reports[0].scale,
            check.selected.name(),
            check.excluded,
            check.pass()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
