//! Runs the built-in consistency checks and lists any that fail.

use nhqc_ion::experiments::{verify_all, CheckStatus, VerifyOptions};

fn main() {
    let report = verify_all(&VerifyOptions::default());
    let info = report.checks.iter().filter(|c| c.status == CheckStatus::Info).count();
    println!("{} checks, {info} informational", report.checks.len());
    for c in report.failures() {
        println!("FAIL {}: {}", c.name, c.detail);
    }
    println!("{}", if report.passed { "all checks passed" } else { "some checks failed" });
}
