use std::io::Write;

use foliacoh::suite::run_criteria;

#[test]
fn acceptance_criteria() {
    let outcomes = run_criteria();
    // written to the raw handle so the lines survive output capture
    let mut out = std::io::stdout().lock();
    for o in &outcomes {
        let _ = writeln!(out, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    assert_eq!(outcomes.len(), 12);
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name.as_str()).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
