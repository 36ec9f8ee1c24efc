//! Runs every acceptance criterion at its stated tolerance and time limit.

use kleinprym::selftest::{run_criterion, CRITERIA};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for &(id, ..) in CRITERIA.iter() {
        let r = run_criterion(id).expect("criterion raised an internal invariant violation");
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
