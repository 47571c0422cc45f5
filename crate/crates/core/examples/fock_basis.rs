//! The truncated two-mode Fock space, sectors of fixed grading, and the
//! weighted inner product on wave operators.

use fuzzy_monopole::{weighted_inner_product, FockBasis, FockIndex, Sector, WaveOperator};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = FockBasis::new(3);
    println!("N_max = 3: {} states", basis.dim());
    for s in basis.iter() {
        println!("  {} -> index {}", s, basis.index_of(s).expect("in basis"));
    }

    // units |n><m| with (n1 + n2) - (m1 + m2) = kappa'
    for kappa in -2..=2 {
        let sector = Sector::new(basis, kappa)?;
        let interior = sector.interior_mask(1)?.iter().filter(|&&k| k).count();
        println!("kappa' = {kappa:+}: {} units, {interior} at depth 1", sector.dim());
    }

    let psi = WaveOperator::unit(basis, FockIndex::new(1, 0), FockIndex::new(0, 0))?;
    let phi = WaveOperator::unit(basis, FockIndex::new(0, 1), FockIndex::new(0, 0))?;
    let mix = psi.axpy(Complex64::new(0.0, 1.0), &phi)?;
    let lambda = 0.5;
    println!("grading of |1,0><0,0|: {}", psi.kappa());
    println!("(psi, psi) = {:.6}", weighted_inner_product(&psi, &psi, lambda)?.re);
    println!("(psi, mix) = {:.6}", weighted_inner_product(&psi, &mix, lambda)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
