//! Runs every verification suite over the parameter lattice.

use opoly::verify::{run_verify, VerifyOptions};

fn main() -> opoly::Result<()> {
    let report = run_verify(&VerifyOptions::default())?;
    for s in &report.suites {
        println!("{:<16} {:>6} checks  {}", s.name, s.checks, if s.passed { "pass" } else { "FAIL" });
        for e in &s.examples {
            println!("    {e}");
        }
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
