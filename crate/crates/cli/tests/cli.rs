use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use umbral_core::report::Report;

fn umbral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbral")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn pseq_of_identity_is_monomials() {
    let o = umbral(&["pseq", "--f", "id", "--order", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    let expected: Vec<String> = std::iter::once("p_0(a) = 1".to_string())
        .chain(std::iter::once("p_1(a) = a".to_string()))
        .chain((2..=5).map(|n| format!("p_{n}(a) = a^{n}")))
        .collect();
    assert_eq!(lines, expected);
}

#[test]
fn pseq_json_rows() {
    let o = umbral(&["pseq", "--f", "id", "--order", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "pseq");
    assert_eq!(v["rows"][3]["coeffs"], serde_json::json!(["0", "0", "0", "1"]));
}

#[test]
fn tn_for_exp1_matches_known_operators() {
    let o = umbral(&["tn", "--f", "exp1", "--depth", "2", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ops = v["operators"].as_array().unwrap();
    assert_eq!(ops.len(), 3);
    let term = |n: usize, d: usize, len: usize| -> Vec<String> {
        let terms = ops[n]["terms"].as_array().unwrap();
        let t = terms.iter().find(|t| t["derivative"] == d).unwrap_or_else(|| panic!("T_{n} lacks d^{d}"));
        t["coeffs"].as_array().unwrap()[..len].iter().map(|c| c.as_str().unwrap().to_string()).collect()
    };
    // T_0 = 1
    assert_eq!(ops[0]["terms"].as_array().unwrap().len(), 1);
    assert_eq!(term(0, 0, 2), ["1", "0"]);
    // T_1 = (1/2) s/omega'(s) d^2 with omega'(s) = 1/(1-s)
    assert_eq!(ops[1]["terms"].as_array().unwrap().len(), 1);
    assert_eq!(term(1, 2, 4), ["0", "1/2", "-1/2", "0"]);
    // T_2: three terms
    assert_eq!(ops[2]["terms"].as_array().unwrap().len(), 3);
    assert_eq!(term(2, 2, 4), ["0", "-1/2", "1/2", "0"]);
    assert_eq!(term(2, 3, 5), ["0", "1/3", "-1", "2/3", "0"]);
    assert_eq!(term(2, 4, 6), ["0", "0", "1/8", "-1/4", "1/8", "0"]);
}

#[test]
fn verify_all_passes() {
    let o = umbral(&["verify", "all", "--order", "10", "--depth", "6"]);
    assert!(o.status.success(), "{}\n{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).ends_with("verify: PASS\n"));
}

#[test]
fn verify_json_round_trips_through_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = umbral(&[
        "verify",
        "series",
        "--order",
        "8",
        "--depth",
        "4",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&path).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.suites.len(), 1);
    assert_eq!(report.suites[0].suite, "series");
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
}

#[test]
fn family_parse_error_reports_position() {
    let o = umbral(&["pseq", "--f", "poly(1,\n  x)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 3"), "{}", stderr(&o));
}

#[test]
fn config_parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"order\": 8,\n  \"depth\": oops\n}").unwrap();
    let o = umbral(&["pseq", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3, column"), "{}", stderr(&o));
}

#[test]
fn config_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, r#"{"f": "id", "order": 3, "json": true}"#).unwrap();
    let o = umbral(&["pseq", "--config", path.to_str().unwrap(), "--order", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "id");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn truncation_shortfall_names_operation() {
    let o = umbral(&["pseq", "--f", "[0, 1, 1]", "--order", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("family_spec: needs"), "{}", stderr(&o));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = umbral(&["verify", "everything"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn other_subcommands_run() {
    for args in [
        &["omega", "--f", "geom", "--order", "6"][..],
        &["q", "--f", "nu", "--depth", "3"],
        &["stirling", "--f", "exp1", "--order", "8", "--depth", "3", "--json"],
        &["limits", "--n-max", "16"],
        &["sheffer", "--order", "8", "--depth", "4", "--json"],
    ] {
        let o = umbral(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        assert!(!stdout(&o).is_empty());
    }
}
