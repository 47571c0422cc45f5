//! The largest free eigenvalue saturates as N_max grows and scales as
//! lambda^-2.

use fuzzy_monopole::spectra::{cutoff_study, EigenOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n_list = [6, 12, 24];
    let mut scaled = Vec::new();
    for lambda in [1.0, 2.0] {
        let s = cutoff_study(lambda, &n_list, &EigenOptions::default())?;
        for p in &s.points {
            println!("lambda {lambda}: N = {:>2}  E_min = {:.4e}  E_max = {:.6}", p.n_max, p.e_min, p.e_max);
        }
        println!("  saturated: {}, lambda^2 E_max = {:.6}", s.saturated, s.scaled_e_max);
        scaled.push(s.scaled_e_max);
    }
    println!("ratio {:.6}", scaled[0] / scaled[1]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
