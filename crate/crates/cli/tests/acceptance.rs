//! Runs the full check battery at the bundled tolerances and prints one
//! line per check. Exits nonzero when any check fails.

use shortint_cli::suite::{run_suite, SuiteOptions};

fn main() {
    let quick = std::env::args().any(|a| a == "--quick");
    let report = run_suite(&SuiteOptions { quick, ..SuiteOptions::default() });
    for check in &report.checks {
        println!("{}", check.line());
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    println!("\n{} checks, {} passed, {} failed", report.checks.len(), report.checks.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
