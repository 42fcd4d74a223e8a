//! Run individual checks and the whole battery programmatically.
//!
//!     cargo run --release --example verification_suite [max_degree]

use lie_duflo::verify::{self, CheckId, CheckSpec};
use lie_duflo::Result;

pub fn run_at(max_degree: u32) -> Result<bool> {
    let report = verify::run_check(&CheckSpec::new(CheckId::SemisimpleDecomp, "sl2", 6))?;
    for case in &report.cases {
        println!("{}: {}", case.label, case.detail.as_deref().unwrap_or(""));
    }

    let suite = verify::run_suite(max_degree, 0)?;
    for r in &suite.reports {
        println!("{}", r.summary());
    }
    println!("suite {} in {:.1?}", suite.status, suite.wall_time);
    Ok(report.passed() && suite.status == verify::Status::Pass)
}

pub fn run() -> Result<()> {
    assert!(run_at(2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let d = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    if !run_at(d)? {
        std::process::exit(1);
    }
    Ok(())
}
