//! The acceptance gate: runs every criterion at its stated tolerance and
//! prints one pass/fail line per criterion. Run with `--nocapture` to watch
//! the lines stream.

use addfn::report::acceptance::run_all;
use addfn::sieve::DEFAULT_SEGMENT_SIZE;

#[test]
fn acceptance_criteria() {
    let results = run_all(DEFAULT_SEGMENT_SIZE);
    assert_eq!(results.len(), 16, "expected all sixteen criteria to run");
    let mut failed = Vec::new();
    for r in &results {
        println!(
            "C{:02} {} {} [{:.2}s] {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.seconds,
            r.details
        );
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
