//! Poisson brackets, the C² Laplacian and velocity operators on functions
//! of z1, z2, z1*, z2*, checked at seeded points.

use fuzzy_monopole::symbolic::{
    hopf_component, laplacian_c2, poisson_bracket, sample_points, velocity_action, xi_state, IdentitySuite,
    MonopoleCharges, SymExpr, Var,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z1 = SymExpr::var(Var::Z1);
    let z1c = SymExpr::var(Var::Z1c);
    println!("{{z1, z1*}} = {}", poisson_bracket(&z1, &z1c));

    let x: Vec<SymExpr> = (1..=3).map(hopf_component).collect();
    println!("x3 = {}", x[2]);
    let r2 = x.iter().fold(SymExpr::zero(), |acc, xi| acc + xi * xi);
    let p = sample_points(1, 11)[0];
    println!("at z = ({:.3}, {:.3}):", p.z1, p.z2);
    println!("  {{x3, x1}} = {:.6}, 2 x2 = {:.6}", poisson_bracket(&x[2], &x[0]).eval(&p)?, 2.0 * p.hopf()[1]);
    println!("  Laplacian of |x|^2 = {:.6}", laplacian_c2(&r2).eval(&p)?);
    println!("  V3 x3 = {:.6}", velocity_action(3, &x[2]).eval(&p)?);

    let xi = xi_state(MonopoleCharges::new(2, 0));
    println!("xi(kappa 2, delta 0) = {xi}, |xi| = {:.15}", xi.eval(&p)?.norm());

    let suite = IdentitySuite::new(25, 0);
    for r in suite.run(&[1, 2])? {
        println!(
            "{:<30} kappa {:>4} delta {:>4}  residual {:.1e}  pass {}",
            r.identity,
            r.kappa.map_or("-".into(), |k| k.to_string()),
            r.delta.map_or("-".into(), |d| d.to_string()),
            r.residual,
            r.pass
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
