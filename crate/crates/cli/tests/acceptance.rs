//! Every acceptance criterion at exact tolerance, one line per check.
//! Exits nonzero when any check fails.

use syzkit_cli::suite::{run_suite, Status};

fn main() {
    let report = run_suite("all", 42, 5).expect("the all suite exists");
    for c in &report.checks {
        let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
        println!("{tag} {} ({} ms): {}", c.id, c.elapsed_ms, c.description);
        if c.status == Status::Fail {
            println!("    expected: {}", c.expected);
            println!("    actual:   {}", c.actual);
        }
    }
    let failed = report.checks.iter().filter(|c| c.status == Status::Fail).count();
    println!("acceptance: {} passed, {failed} failed", report.checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
