use std::fs;
use std::path::Path;

use foliacoh::doc::Document;
use foliacoh::suite::{default_fixture_dir, golden_cases, input_documents, regenerate, run_goldens};
use foliacoh::{execute_bytes, Command};

fn copy_dir(from: &Path, to: &Path) {
    for sub in ["inputs", "golden"] {
        fs::create_dir_all(to.join(sub)).unwrap();
        for entry in fs::read_dir(from.join(sub)).unwrap() {
            let entry = entry.unwrap();
            fs::copy(entry.path(), to.join(sub).join(entry.file_name())).unwrap();
        }
    }
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    names
}

#[test]
fn shipped_fixtures_match_regeneration() {
    let tmp = tempfile::tempdir().unwrap();
    regenerate(tmp.path()).unwrap();
    let shipped = default_fixture_dir();
    for sub in ["inputs", "golden"] {
        let names = listing(&tmp.path().join(sub));
        assert_eq!(names, listing(&shipped.join(sub)), "{sub} file sets differ");
        for name in names {
            let fresh = fs::read_to_string(tmp.path().join(sub).join(&name)).unwrap();
            let old = fs::read_to_string(shipped.join(sub).join(&name)).unwrap();
            assert_eq!(fresh, old, "{sub}/{name} is stale; run `foliacoh fixtures regenerate`");
        }
    }
}

#[test]
fn shipped_goldens_pass() {
    let outcomes = run_goldens(&default_fixture_dir(), None);
    assert_eq!(outcomes.len(), golden_cases().len());
    for o in &outcomes {
        assert!(o.passed, "{}: {}", o.name, o.detail);
    }
}

#[test]
fn perturbed_golden_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    copy_dir(&default_fixture_dir(), tmp.path());
    let path = tmp.path().join("golden/segment.polytope.json");
    let text = fs::read_to_string(&path).unwrap();
    let perturbed = text.replacen("\"euler_characteristic\": 2", "\"euler_characteristic\": 3", 1);
    assert_ne!(text, perturbed);
    fs::write(&path, perturbed).unwrap();
    let failed: Vec<_> = run_goldens(tmp.path(), None).into_iter().filter(|o| !o.passed).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].name, "segment.polytope");
    assert!(failed[0].detail.contains("euler_characteristic"), "{}", failed[0].detail);
}

#[test]
fn perturbed_input_coefficient_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    copy_dir(&default_fixture_dir(), tmp.path());
    let path = tmp.path().join("inputs/square.json");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("4,", "5,", 1)).unwrap();
    let failed: Vec<String> = run_goldens(tmp.path(), None).into_iter().filter(|o| !o.passed).map(|o| o.name).collect();
    assert_eq!(failed, ["square.validate", "square.polytope"]);
}

#[test]
fn filter_selects_hopf_family() {
    let outcomes = run_goldens(&default_fixture_dir(), Some("hopf"));
    assert!(!outcomes.is_empty());
    assert!(outcomes.iter().all(|o| o.name.contains("hopf") && o.passed));
    assert!(outcomes.iter().any(|o| o.name.starts_with("hopf_gstar.")));
    assert!(outcomes.iter().any(|o| o.name.starts_with("hopf_strata.")));
    assert!(outcomes.iter().any(|o| o.name.starts_with("hopf_morse.")));
}

#[test]
fn parse_serialize_round_trip() {
    for (name, doc) in input_documents() {
        let text = doc.to_json();
        let parsed = Document::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(parsed.to_json(), text, "{name}");
    }
    for entry in fs::read_dir(default_fixture_dir().join("inputs")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        assert_eq!(Document::parse(&text).unwrap().to_json(), text);
    }
}

#[test]
fn results_are_deterministic() {
    for (name, doc) in input_documents().into_iter().take(12) {
        let bytes = doc.to_json();
        for c in [Command::Validate, Command::Cohomology, Command::Module, Command::Strata] {
            let a = execute_bytes(c, bytes.as_bytes(), None).to_json();
            let b = execute_bytes(c, bytes.as_bytes(), None).to_json();
            assert_eq!(a, b, "{name} {}", c.name());
        }
    }
}

#[test]
fn gstar_documents_accept_handwritten_rationals() {
    let text = r#"{
      "schema_version": 1,
      "kind": "gstar_algebra",
      "window": 6,
      "payload": {
        "lie": {"dim": 1},
        "basis": [["1"], ["theta"]],
        "contractions": [{"theta": {"1": 1}}]
      }
    }"#;
    let r = execute_bytes(Command::Equivariant, text.as_bytes(), None);
    assert_eq!(r.status, foliacoh::Status::Ok, "{:?}", r.diagnostics);
    assert_eq!(r.results["dims"], serde_json::json!([1, 0, 0, 0, 0, 0, 0]));
    let half = text.replace(r#"{"1": 1}"#, r#"{"1": "1/2"}"#);
    let r = execute_bytes(Command::Validate, half.as_bytes(), None);
    assert_eq!(r.status, foliacoh::Status::Ok);
}
