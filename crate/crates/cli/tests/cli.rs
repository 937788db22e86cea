use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn lore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lore")).args(args).output().expect("run lore")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["example1_associated.json", "example2_associated.json", "example3_structure.json"] {
        let sys = fixture(name);
        let out = lore(&["solve", path(&sys)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let rep = dir.path().join(format!("{name}.rep"));
        fs::write(&rep, &out.stdout).unwrap();
        let out = lore(&["verify", path(&sys), path(&rep)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(stdout_json(&out)["passed"], Value::Bool(true));
    }
}

#[test]
fn example3_certificate() {
    let out = lore(&["solve", path(&fixture("example3_associated.json"))]);
    let v = stdout_json(&out);
    let groups = v["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 1);
    let cert = &groups[0]["certificate"];
    assert_eq!(cert["dx"], "1/y");
    assert_eq!(cert["sk"], "k");
    assert_eq!(cert["dy"], "-x/y^2");
}

#[test]
fn output_is_deterministic() {
    let sys = fixture("example2_associated.json");
    let a = lore(&["solve", path(&sys), "--order", "d,s"]);
    let b = lore(&["solve", path(&sys), "--order", "d,s"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupted_vector_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let sys = fixture("example1_associated.json");
    let out = lore(&["solve", path(&sys)]);
    let mut v = stdout_json(&out);
    v["groups"][0]["vectors"][0][2] = Value::String("n*x".into());
    let rep = dir.path().join("bad.json");
    fs::write(&rep, v.to_string()).unwrap();
    let out = lore(&["verify", path(&sys), path(&rep)]);
    assert_eq!(out.status.code(), Some(5));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], Value::Bool(false));
    let g = &report["groups"][0];
    assert_eq!(g["passed"], Value::Bool(false));
    let r = &g["residuals"][0];
    assert_eq!(r["map"], "sn");
    assert_eq!(r["vector"], 1);
    assert!(!r["entries"].as_array().unwrap().is_empty());
    assert_eq!(report["groups"][1]["passed"], Value::Bool(true));
}

#[test]
fn malformed_entry_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture("example2_associated.json")).unwrap();
    let bad = text.replacen("\"1/y\"", "\"1/(y\"", 1);
    assert_ne!(bad, text);
    let p = dir.path().join("bad.json");
    fs::write(&p, bad).unwrap();
    let out = lore(&["solve", path(&p)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");

    fs::write(&p, "{\"variables\": [\"x\"],").unwrap();
    let out = lore(&["check", path(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn check_reports_integrability() {
    let out = lore(&["check", path(&fixture("example2_associated.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["integrable"], Value::Bool(true));

    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&fs::read_to_string(fixture("example3_associated.json")).unwrap()).unwrap();
    v["equations"][1]["matrix"][0][0] = Value::String("k + x".into());
    let p = dir.path().join("bad.json");
    fs::write(&p, v.to_string()).unwrap();
    let out = lore(&["check", path(&p)]);
    assert_eq!(out.status.code(), Some(3));
    let report = stdout_json(&out);
    assert_eq!(report["integrable"], Value::Bool(false));
    assert_eq!(report["pair"].as_array().unwrap().len(), 2);
}

#[test]
fn iso_finds_witness() {
    let dir = tempfile::tempdir().unwrap();
    let sys = fixture("example1_associated.json");
    let p = dir.path().join("pair.json");
    fs::write(&p, r#"{"first": {"sn": "1/n"}, "second": {"sn": "1/x"}}"#).unwrap();
    let out = lore(&["iso", path(&sys), path(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["isomorphic"], Value::Bool(false));

    fs::write(&p, r#"{"first": {"sn": "1/n"}, "second": {"sn": "1/(n+1)"}}"#).unwrap();
    let out = lore(&["iso", path(&sys), path(&p)]);
    let v = stdout_json(&out);
    assert_eq!(v["isomorphic"], Value::Bool(true));
    assert!(v["witness"].as_str().unwrap().contains('n'));
}

#[test]
fn associated_matches_fixture() {
    for e in 1..=3 {
        let out = lore(&["associated", path(&fixture(&format!("example{e}_structure.json")))]);
        assert_eq!(out.status.code(), Some(0));
        let got = stdout_json(&out);
        let want: Value =
            serde_json::from_str(&fs::read_to_string(fixture(&format!("example{e}_associated.json"))).unwrap()).unwrap();
        // compare through the solver's parser so formatting differences do not matter
        let a = laurent_ore::io::parse_system(&got.to_string()).unwrap();
        let b = laurent_ore::io::parse_system(&want.to_string()).unwrap();
        assert_eq!(a.matrices, b.matrices, "example {e}");
    }
}

#[test]
fn flags_are_validated() {
    let sys = fixture("example1_associated.json");
    let out = lore(&["solve", path(&sys), "--max-degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lore(&["solve", path(&sys), "--order", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lore(&["solve", path(&sys), "--format", "pretty", "--pivot", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("2 group(s)"));
}
