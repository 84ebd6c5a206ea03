use std::path::PathBuf;
use std::process::{Command, Output};

use foliacoh::suite::default_fixture_dir;

fn input(name: &str) -> PathBuf {
    default_fixture_dir().join("inputs").join(format!("{name}.json"))
}

fn foliacoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foliacoh")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn polytope_segment() {
    let out = foliacoh(&["polytope", "--input", input("segment").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["polynomial"], serde_json::json!([1, 0, 1]));
}

#[test]
fn equivariant_hopf_with_weil_cross_check() {
    let out = foliacoh(&["equivariant", "--input", input("hopf_gstar").to_str().unwrap(), "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["dims"], serde_json::json!([1, 0, 1, 0, 0, 0, 0, 0, 0]));
    assert_eq!(v["results"]["weil"]["agrees"], serde_json::json!(true));
}

#[test]
fn odd_isolated_leaf_is_rejected_with_the_rule() {
    let out = foliacoh(&["validate", "--input", input("bad_q_odd_isolated_leaf").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = json(&out)["diagnostics"].to_string();
    assert!(text.contains("isolated_closed_leaf_even_q"), "{text}");
    assert!(text.contains("an isolated closed leaf forces the codimension q to be even"), "{text}");
}

#[test]
fn exit_codes() {
    let out = foliacoh(&["morse", "--input", input("indivisible_morse").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = foliacoh(&["module", "--input", input("hopf_gstar_module").to_str().unwrap(), "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "inconclusive");
    let out = foliacoh(&["spectral", "--input", input("segment").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = foliacoh(&["bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"schema_version": 1, "kind": "polytope", "payload": {"f_vector": ["x"], "q": 2}}"#).unwrap();
    let out = foliacoh(&["polytope", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, r#"{"schema_version": 2, "kind": "polytope", "payload": {"f_vector": [2, 1], "q": 2}}"#).unwrap();
    let out = foliacoh(&["polytope", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["diagnostics"][0].as_str().unwrap().contains("schema version"));
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let seg = input("segment");
    let out = foliacoh(&["polytope", "--input", seg.to_str().unwrap(), "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let golden = std::fs::read_to_string(default_fixture_dir().join("golden/segment.polytope.json")).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden);
    let out = foliacoh(&["polytope", "--input", seg.to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: ok") && text.contains("polynomial: [1,0,1]"), "{text}");
}

#[test]
fn thread_hint_does_not_change_results() {
    let seg = input("hopf_gstar");
    let a = foliacoh(&["spectral", "--input", seg.to_str().unwrap()]);
    let b = Command::new(env!("CARGO_BIN_EXE_foliacoh"))
        .args(["spectral", "--input", seg.to_str().unwrap()])
        .env("FOLIACOH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fixtures_subcommand() {
    let out = foliacoh(&["fixtures", "list", "--filter", "segment"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4, "{text}");
    let out = foliacoh(&["fixtures", "run", "--filter", "hopf"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).all(|l| l.contains("hopf")), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let out = foliacoh(&["fixtures", "regenerate", "--output", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("golden/triangle.polytope.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("[\n      1,", "[\n      2,", 1)).unwrap();
    let out = foliacoh(&["fixtures", "run", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL triangle.polytope: golden mismatch"), "{text}");
}
