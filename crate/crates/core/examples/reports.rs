//! Driving the batch runner from code and reading back its JSON-lines
//! reports and summary.

use fuzzy_monopole::cli::{describe, run, Format, RunConfig, Suite};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", describe("su22")?);

    let out = std::env::temp_dir().join(format!("fuzzy-monopole-reports-{}", std::process::id()));
    let cfg = RunConfig {
        suite: Suite::Algebra,
        n_max: Some(vec![6]),
        lambda: Some(vec![1.0]),
        kappa: Some(vec![0]),
        out: out.clone(),
        formats: vec![Format::Json],
        ..Default::default()
    };
    let summary = run(&cfg)?;
    println!("overall pass: {}", summary.pass);
    let lines = std::fs::read_to_string(out.join("algebra.jsonl"))?;
    for line in lines.lines().take(2) {
        println!("{line}");
    }
    println!("... {} records", lines.lines().count());
    std::fs::remove_dir_all(&out)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
