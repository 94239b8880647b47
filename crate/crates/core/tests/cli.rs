use std::process::Command;

use serde_json::Value;

fn qschur(cache: &std::path::Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qschur")).env("QSCHUR_CACHE_DIR", cache).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const X: &str = r#"{"even":[[0,0],[0,0]],"odd":[[0,1],[0,0]]}"#;
const A: &str = r#"{"even":[[0,0],[0,0]],"odd":[[0,0],[1,0]]}"#;

#[test]
fn spot_product_both_engines() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = qschur(dir.path(), &["product", "--n", "2", "--r", "1", "--x", X, "--a", A, "--engine", "both"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["agree"], Value::Bool(true));
    assert_eq!(v["diff"]["terms"].as_array().unwrap().len(), 0);
    let terms = v["oracle"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["matrix"]["even"], serde_json::json!([[1, 0], [0, 0]]));
    assert_eq!(terms[0]["coeff"]["re"], "-1");
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["structure-constants", "--n", "2", "--r", "3", "--shape", "lower1"];
    let (c1, cold) = qschur(dir.path(), &args);
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    let (c2, warm) = qschur(dir.path(), &args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(entries, 1);
    assert_eq!(cold, warm);
    let (_, other) = qschur(dir.path(), &["structure-constants", "--n", "2", "--r", "3", "--shape", "upper0"]);
    assert_ne!(cold, other);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn verify_suites_report_counts() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["section3", "products", "relations", "blm-basis", "triangular", "pi"] {
        let (code, out) = qschur(dir.path(), &["verify", "--suite", suite, "--n", "2", "--rmax", "3"]);
        assert_eq!(code, 0, "{suite}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["suite"], suite);
        assert!(v["cases"].as_u64().unwrap() > 0);
        assert_eq!(v["failures"], 0);
    }
    let (code, out) = qschur(dir.path(), &["verify", "--suite", "section3", "--name", "shift-down", "--nmax", "2", "--rmax", "4"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["identities"].as_array().unwrap().len(), 1);
}

#[test]
fn basis_and_realize() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = qschur(dir.path(), &["basis", "--n", "1", "--r", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);

    let m = r#"{"even":[[0,1],[0,0]],"odd":[[0,0],[0,0]]}"#;
    let (code, out) = qschur(dir.path(), &["realize", "--n", "2", "--rmax", "3", "--matrix", m, "--j", "[1,0]", "--express"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["family"]["levels"].as_array().unwrap().len(), 4);
    assert_eq!(v["triangular"]["triangular"], Value::Bool(true));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qschur(dir.path(), &["product", "--n", "2", "--r", "1", "--x", "[1,2", "--a", A]).0, 2);
    assert_eq!(qschur(dir.path(), &["product", "--n", "2", "--r", "2", "--x", X, "--a", A]).0, 2);
    assert_eq!(qschur(dir.path(), &["realize", "--n", "2", "--matrix", X, "--j", "[1]"]).0, 2);
    assert_eq!(qschur(dir.path(), &["frobnicate"]).0, 2);
}
