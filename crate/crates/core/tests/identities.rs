use qschur::identities::{run_identity, REGISTRY};

/// Matrix-indexed entries run on n ≤ 3, r ≤ 5; the others on r ≤ 6.
#[test]
fn registry_holds_on_full_grids() {
    for id in REGISTRY {
        let rmax = if id.name.starts_with("xmu-") || id.name.starts_with("interval-") { 6 } else { 5 };
        let t = run_identity(id, 3, rmax, 5);
        assert!(t.cases > 0, "{}", id.name);
        assert_eq!(t.inadmissible, 0, "{}", id.name);
        assert_eq!(t.failures, 0, "{}: {:?}", id.name, t.failed);
        eprintln!("{:<26} {:>6} cases", id.name, t.cases);
    }
}
