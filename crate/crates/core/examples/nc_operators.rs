//! Coordinates, radius, free Hamiltonian, velocity and angular momentum on
//! R³_λ, acting on a few wave operators.

use fuzzy_monopole::nc::{coordinate_matrix, radius_matrix};
use fuzzy_monopole::{
    angular_momentum_superop, hamiltonian_free_superop, velocity_superop, FockBasis, FockIndex, VelocityRoute,
    WaveOperator,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = 1.0;
    let basis = FockBasis::new(6);

    let x: Vec<_> = (1..=3).map(|i| coordinate_matrix(i, lambda, basis)).collect::<Result<_, _>>()?;
    let comm = x[0].mul(&x[1]).axpy((-1.0).into(), &x[1].mul(&x[0]));
    let target = x[2].scale(num_complex::Complex64::new(0.0, 2.0 * lambda));
    let gap = comm.axpy((-1.0).into(), &target).to_dense().norm();
    println!("|[x1,x2] - 2i lambda x3| = {gap:.1e}");

    let r = radius_matrix(lambda, basis)?;
    let cas = x.iter().fold(r.mul(&r).scale((-1.0).into()), |acc, xi| acc.add(&xi.mul(xi)));
    let shift = fuzzy_monopole::FockOperator::identity(basis).scale((lambda * lambda).into());
    println!("|x.x - r^2 + lambda^2| = {:.1e}", cas.add(&shift).to_dense().norm());

    let vacuum = WaveOperator::unit(basis, FockIndex::vacuum(), FockIndex::vacuum())?;
    let h0 = hamiltonian_free_superop(lambda, basis)?;
    let out = h0.apply(&vacuum)?;
    println!(
        "H0 |0><0| : <0|.|0> = {:.4}, <1,0|.|1,0> = {:.4}",
        out.get(FockIndex::vacuum(), FockIndex::vacuum()),
        out.get(FockIndex::new(1, 0), FockIndex::new(1, 0))
    );

    let unit = WaveOperator::unit(basis, FockIndex::new(1, 0), FockIndex::new(1, 0))?;
    for route in [VelocityRoute::Commutator, VelocityRoute::Explicit] {
        let v3 = velocity_superop(3, lambda, basis, route)?;
        let w = v3.apply(&unit)?;
        println!(
            "V3 ({route:?}, reach {}) on |1,0><1,0|: <0|.|0> = {:.4}, <1,1|.|1,1> = {:.4}",
            v3.reach(),
            w.get(FockIndex::vacuum(), FockIndex::vacuum()),
            w.get(FockIndex::new(1, 1), FockIndex::new(1, 1)),
        );
    }

    let l3 = angular_momentum_superop(3, lambda, basis)?;
    let psi = WaveOperator::unit(basis, FockIndex::new(3, 0), FockIndex::new(0, 1))?;
    println!("L3 |3,0><0,1| = {} x itself", l3.apply(&psi)?.get(FockIndex::new(3, 0), FockIndex::new(0, 1)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
