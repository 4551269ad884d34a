use std::process::{Command, Output};

use serde_json::Value;

fn uawq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uawq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn build_w_dumps_square_matrices() {
    let out = uawq(&["build", "w", "--params", "1,1,1,1,0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dbar"], 3);
    for m in ["A", "B"] {
        let rows = v[m].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 3));
    }
}

#[test]
fn build_vn_dimension_is_n_plus_one() {
    let out = uawq(&["build", "vn", "--params", "2,2,2", "--n", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["A"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_inputs_exit_with_two() {
    let out = uawq(&["build", "vn", "--params", "2,2,2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "BadRange");

    let out = uawq(&["build", "w", "--p", "12", "--params", "1,1,1,1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "NotPrime");

    let out = uawq(&["build", "w", "--params", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn irr_reports_criterion_and_oracle() {
    let out = uawq(&["irr", "w", "--params", "1,1,1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("criterion: false"));
    assert!(s.contains("agree:     true"));

    let out = uawq(&["irr", "vn", "--params", "2,5,6", "--n", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["criterion"], true);
}

#[test]
fn orbit_of_quadruple() {
    let out = uawq(&["orbit", "--params", "1,1,1,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["s4_images"].as_array().unwrap().len(), 24);
    let classes = v["s4_classes"].as_array().unwrap();
    assert!(!classes.is_empty() && classes.len() <= 24);
    let one = serde_json::json!([1, 0]);
    assert!(classes
        .iter()
        .any(|c| ["a", "b", "c", "lambda"].iter().all(|k| c[k] == one)));
}

#[test]
fn orbit_of_quintuple_has_closure() {
    let out = uawq(&["orbit", "--params", "1,1,1,1,2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["stats"]["closure_size"],
        v["closure"]["members"].as_array().unwrap().len()
    );
}

#[test]
fn suite_smoke_passes() {
    let out = uawq(&["suite", "--level", "smoke", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn classify_is_deterministic_and_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("uawq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("classes.json");
    let path_s = path.to_str().unwrap();

    let a = uawq(&["classify", "--count", "30", "--seed", "5", "--json"]);
    let b = uawq(&[
        "classify", "--count", "30", "--seed", "5", "--json", "--out", path_s,
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(serde_json::from_slice::<Value>(&written).unwrap(), json(&a));
    assert_eq!(json(&a)["count"], 30);
    std::fs::remove_dir_all(&dir).unwrap();
}
