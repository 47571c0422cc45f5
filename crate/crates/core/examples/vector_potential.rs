//! The monopole vector potential read off from V xi / xi, its curl, the
//! flux through spheres and the placement of the Dirac string.

use std::f64::consts::PI;

use fuzzy_monopole::symbolic::{
    closed_form_a_phi, coulomb_field, extract_vector_potential, magnetic_field, magnetic_flux, C2Point,
    MonopoleCharges,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = C2Point::from_euler(2.0, PI / 3.0, 0.5, 0.0);
    for (kappa, delta) in [(2, 0), (1, 1), (1, -1)] {
        let c = MonopoleCharges::new(kappa, delta);
        let a = extract_vector_potential(c, &p)?;
        println!(
            "kappa {kappa} delta {delta:+}: (A_r, A_theta, A_phi) = ({:.1e}, {:.1e}, {:.6}), closed form {:.6}",
            a[0],
            a[1],
            a[2],
            closed_form_a_phi(c, 2.0, PI / 3.0)
        );
    }

    let x = [0.3, -0.7, 1.1];
    let c = MonopoleCharges::new(1, 0);
    println!("curl A at {x:?} = {:.8?}", magnetic_field(c, x)?);
    println!("-(kappa/2) x/r^3    = {:.8?}", coulomb_field(1, x));

    for kappa in 0..=2 {
        for radius in [1.0, 7.0] {
            let flux = magnetic_flux(MonopoleCharges::new(kappa, 0), radius, 32)?;
            println!("flux kappa {kappa} radius {radius}: {flux:.10} (-2 pi kappa = {:.10})", -2.0 * PI * kappa as f64);
        }
    }

    for delta in [1, -1] {
        let c = MonopoleCharges::new(1, delta);
        let north = extract_vector_potential(c, &C2Point::from_euler(1.0, 1e-7, 0.3, 0.0))?[2];
        let south = extract_vector_potential(c, &C2Point::from_euler(1.0, PI - 1e-7, 0.3, 0.0))?[2];
        println!("delta {delta:+}: |A_phi| near north {:.2e}, near south {:.2e}", north.abs(), south.abs());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
