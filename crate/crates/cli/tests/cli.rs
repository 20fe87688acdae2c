use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn wpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpl"))
        .args(args)
        .env_remove("WPL_WINDOW_RADIUS")
        .output()
        .expect("spawn wpl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const CANONICAL_N4: &str = r#"{"n":4,"summands":["O(0,0,0,0)","O(1,0,0,0)","O(0,1,0,0)","O(0,0,1,0)","O(0,0,2,0)","O(0,0,3,0)","O(0,0,0,1)"]}"#;

#[test]
fn hom_between_line_bundles() {
    let o = wpl(&["--n", "3", "hom", "O(0,0,0,0)", "O(0,0,1,0)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn oracle_adds_verified_field_only() {
    let plain = wpl(&["--n", "4", "--output", "json", "ext", "E3[0]", "O(0,0,0,-1)"]);
    let checked = wpl(&["--n", "4", "--output", "json", "ext", "E3[0]", "O(0,0,0,-1)", "--oracle"]);
    assert!(checked.status.success());
    let mut a: Value = serde_json::from_str(&stdout(&plain)).unwrap();
    let b: Value = serde_json::from_str(&stdout(&checked)).unwrap();
    assert_eq!(b["verified"], Value::Bool(true));
    a["verified"] = Value::Bool(true);
    assert_eq!(a, b);
}

#[test]
fn canonical_check() {
    let f = file(CANONICAL_N4);
    let o = wpl(&["tilting", "check", f.path().to_str().unwrap(), "--n", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "tilting: true; form: CanonicalTwist(L=O)");
}

#[test]
fn check_rejects_non_tilting_without_failing() {
    let f = file(r#"{"n":3,"summands":["O(0,0,0,0)","E2[0]"]}"#);
    let o = wpl(&["tilting", "check", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("tilting: false"));
    let o = wpl(&["tilting", "classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weight_mismatch_is_a_domain_error() {
    let f = file(CANONICAL_N4);
    let o = wpl(&["tilting", "check", f.path().to_str().unwrap(), "--n", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rank_two_results_for_n2_are_slices() {
    let o = wpl(&["--n", "2", "--output", "json", "tilting", "enumerate", "--normalized"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert!(!results.is_empty());
    for r in results {
        if r["kind"] == "rank-two" {
            assert_eq!(r["slice"], Value::Bool(true), "{r}");
        }
    }
}

#[test]
fn classify_output_round_trips() {
    let o = wpl(&["--n", "3", "--output", "json", "tilting", "enumerate", "--normalized"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in v["results"].as_array().unwrap().iter().take(6) {
        let json = serde_json::json!({ "n": 3, "summands": r["summands"] }).to_string();
        let f = file(&json);
        let c = wpl(&["--output", "json", "tilting", "classify", f.path().to_str().unwrap()]);
        assert!(c.status.success(), "{json}");
        let form: Value = serde_json::from_str(&stdout(&c)).unwrap();
        assert!(form["variant"] == "CanonicalTwist" || form["variant"] == "Triple");
    }
}

#[test]
fn missing_report_for_canonical() {
    let f = file(CANONICAL_N4);
    let o = wpl(&["--output", "json", "missing", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // one rank-two point per interval in the A_3 orbit chain
    assert_eq!(v["size"], 6);
    assert_eq!(v["C"].as_array().unwrap().len(), 6);
    let dot = wpl(&["--output", "dot", "missing", f.path().to_str().unwrap()]);
    assert!(stdout(&dot).starts_with("digraph"));
}

#[test]
fn radius_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_wpl"))
        .args(["--n", "2", "--output", "json", "tilting", "enumerate"])
        .env("WPL_WINDOW_RADIUS", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["radius"], 3);
}

#[test]
fn quiver_window_and_dot() {
    let o = wpl(&["--n", "3", "quiver", "--window", "-2:2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("30 vertices"));
    let d = wpl(&["--n", "3", "quiver", "--window", "-1:1", "--dot"]);
    assert!(stdout(&d).starts_with("digraph \"window -1:1\""));
}

#[test]
fn group_queries() {
    let o = wpl(&["--n", "3", "group", "normalize", "2*x1"]);
    assert_eq!(stdout(&o).trim(), "0*x1+0*x2+0*x3+1*c");
    let o = wpl(&["--n", "3", "group", "order", "x1", "x2"]);
    assert_eq!(stdout(&o).trim(), "incomparable");
    let o = wpl(&["--n", "3", "group", "delta", "c"]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn dom_sizes() {
    let o = wpl(&["--n", "3", "--output", "json", "dom", "E3[0]"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 13);
    let o = wpl(&["--n", "3", "--output", "json", "dom", "E3[0]", "--plus"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 9);
}

#[test]
fn exit_codes() {
    let o = wpl(&["--n", "3", "hom", "O(0,0,0", "E2[0]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(wpl(&["hom", "E2[0]", "E2[0]"]).status.code(), Some(2));
    assert_eq!(wpl(&["--n", "1", "sdim", "c"]).status.code(), Some(2));
    assert_eq!(wpl(&["--n", "3", "frobnicate"]).status.code(), Some(2));
    assert_eq!(wpl(&["--n", "3", "sdim", "c", "--output", "dot"]).status.code(), Some(2));
    assert_eq!(wpl(&["--n", "3", "slice", "E9[0]"]).status.code(), Some(1));
}
