//! The twelve acceptance criteria, one line each. Run with
//! `cargo test -p spectra-core --test acceptance -- --nocapture` to see them.

use spectra_core::report::Status;
use spectra_core::suite::suite_all;

#[test]
fn acceptance_criteria() {
    let report = suite_all(0);
    assert_eq!(report.checks.len(), 12);
    let mut failed = Vec::new();
    println!();
    for check in &report.checks {
        let mark = match check.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        println!("[{mark}] {}  {}", check.name, check.detail);
        if check.status != Status::Pass {
            failed.push(check.name.clone());
        }
    }
    assert!(failed.is_empty(), "failing criteria: {}", failed.join(", "));
}
