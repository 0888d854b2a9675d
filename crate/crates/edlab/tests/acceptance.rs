//! Acceptance suite: runs every check in the verification module and prints
//! one pass/fail line per criterion. This is the same battery exposed by
//! `edlab verify all`.

use edlab::verify::{run, Scope};

#[test]
fn acceptance_suite() {
    let results = run(Scope::All);
    let mut all_ok = true;
    for r in &results {
        println!(
            "{} {:<26} {:>8} ms  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.anchor,
            r.millis,
            r.detail
        );
        all_ok &= r.passed;
    }
    assert!(all_ok, "acceptance criteria failed; see the lines above");
    assert_eq!(results.len(), 14, "expected the full battery of checks");
}
