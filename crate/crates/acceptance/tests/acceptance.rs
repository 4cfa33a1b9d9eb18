//! Runs the ten criteria and prints one PASS/FAIL line for each.  Built with
//! `harness = false` so the lines show up without `--nocapture`.

use cover13_acceptance::{run_all, DEFAULT_SEED};

fn main() {
    let results = run_all(DEFAULT_SEED);
    for r in &results {
        println!("{}", r.line(true));
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.pass()).map(|r| r.id).collect();
    if results.len() != 10 || !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", results.len());
}
