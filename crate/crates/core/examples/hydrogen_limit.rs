//! Coulomb spectra on R³_λ against the radial finite-difference oracle.
//!
//! `cargo run --release --example hydrogen_limit -- 40` reproduces the
//! default spectrum suite; the default cutoff here is small for speed.

use fuzzy_monopole::spectra::{commutative_limit_table, hydrogen, EigenOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_with(24)
}

fn run_with(n_max: usize) -> Result<(), Box<dyn std::error::Error>> {
    let oracle = hydrogen::lowest_with_multiplicity(1.0, 5, hydrogen::Grid::default())?;
    println!("radial oracle, lowest 5 with multiplicity: {oracle:.5?}");

    // λ(N_max + 1) bounds the radius the basis can resolve; the n = 2 shell
    // needs roughly ten Bohr radii
    let lambdas = if n_max >= 40 { [0.4, 0.3, 0.2] } else { [0.6, 0.5, 0.4] };
    let table = commutative_limit_table(1.0, &lambdas, n_max, 5, 0, &EigenOptions::default())?;
    for t in &table.tables {
        println!("lambda {:.1}: {:.5?} converged {:?}", t.lambda, t.eigenvalues, t.converged);
    }
    for ex in table.extrapolated.iter().take(2) {
        match ex.value {
            Some(v) => println!(
                "level {} -> {v:.5} (oracle {:.5}, over lambda {:?})",
                ex.level, oracle[ex.level], ex.lambdas_used
            ),
            None => println!("level {}: no fit", ex.level),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(n) => run_with(n.parse()?),
        None => run_example(),
    }
}
