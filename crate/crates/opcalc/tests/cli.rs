use std::process::{Command, Output};

use serde_json::Value;

fn opcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opcalc")).args(args).env_remove("OPCALC_ORDER").output().expect("run opcalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = opcalc(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn appell_rows() {
    let out = ok(&["family", "appell", "--f-egf", "1,1,1", "--order", "8", "--emit", "rows"]);
    assert!(out.lines().any(|l| l == "u_2 = t^2 + 2*t + 1"), "{out}");
    assert_eq!(out.lines().count(), 8);
}

#[test]
fn ward_square_monomiality() {
    let out = ok(&["check", "monomiality", "--family", "ward", "--c", "k2", "--g", "exp_poly:z,y", "--order", "16"]);
    assert!(out.contains("note: u_2 = t^2 + 4*z*t + 2*z^2 + 4*y"), "{out}");
    assert!(out.trim_end().ends_with(", 0 failed"));
}

#[test]
fn decompose_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("matrix.json");
    let m = ok(&["family", "appell", "--f-egf", "1", "--order", "5", "--emit", "rows", "--format", "json"]);
    let v: Value = serde_json::from_str(&m).unwrap();
    std::fs::write(&path, v["matrix"].to_string()).unwrap();
    let out = ok(&["decompose", "--input", path.to_str().unwrap(), "--format", "json"]);
    let rep: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["K"], 5);
    let ps = rep["ps"].as_array().unwrap();
    assert_eq!(ps[0], serde_json::json!(["1/1"]));
    assert!(ps[1..].iter().all(|p| p.as_array().unwrap().is_empty()));
}

#[test]
fn suites_from_the_examples() {
    let out = ok(&["check", "pincherle", "--order", "12"]);
    assert!(!out.contains("FAIL"));
    let out = ok(&["check", "examples", "--order", "16"]);
    assert!(out.contains("PASS examples: laguerre: a = 2, y = 1/a"), "{out}");
    let out = ok(&["check", "ortho7", "--f2", "0", "--order", "16"]);
    assert!(out.contains("PASS ortho7: L closed form"), "{out}");
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", "--family", "appell", "--f-egf", "1", "--k", "3", "--t", "2"]).trim(), "8");
    assert_eq!(ok(&["eval", "--family", "ward", "--c", "k2", "--g", "exp_poly:0,0", "--k", "2", "--t", "3"]).trim(), "9");
    assert_eq!(ok(&["eval", "--family", "binomial", "--f-egf", "expm1", "--k", "2", "--t", "1"]).trim(), "2");
    let sym = ok(&["eval", "--family", "ward", "--c", "k2", "--g", "exp_poly:z,y", "--k", "2", "--t", "0", "--order", "4"]);
    assert_eq!(sym.trim(), "2*z^2 + 4*y");
}

#[test]
fn exit_codes() {
    assert_eq!(opcalc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(opcalc(&["family", "appell"]).status.code(), Some(2));
    assert_eq!(opcalc(&["family", "appell", "--f-egf", "1/z"]).status.code(), Some(2));
    assert_eq!(opcalc(&["family", "ward", "--c", "k2", "--g", "exp_poly:z", "--ring", "rational"]).status.code(), Some(2));
    assert_eq!(opcalc(&["decompose", "--input", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(opcalc(&["eval", "--family", "appell", "--f-egf", "1", "--k", "9", "--t", "1", "--order", "4"]).status.code(), Some(2));
    assert_eq!(opcalc(&["--help"]).status.code(), Some(0));
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_opcalc"))
        .args(["family", "appell", "--f-egf", "1"])
        .env("OPCALC_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "u_0 = 1\nu_1 = t\nu_2 = t^2\n");
}

#[test]
fn json_matrix_round_trips_through_decompose() {
    let m = ok(&["ops", "--family", "sheffer", "--g-egf", "1,2,-1", "--f-egf", "0,1,3", "--emit", "L", "--format", "json", "--order", "6"]);
    let v: Value = serde_json::from_str(&m).unwrap();
    assert_eq!(v["index"], -1);
    assert_eq!(v["ring"], "rational");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.json");
    std::fs::write(&path, &m).unwrap();
    // Index -1 is outside the decomposable class.
    assert_eq!(opcalc(&["decompose", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "diffop-roundtrip", "--order", "10", "--seed", "5", "--format", "json"];
    assert_eq!(ok(&args), ok(&args));
    let v: Value = serde_json::from_str(&ok(&args)).unwrap();
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn recurrence_table() {
    let out = ok(&["family", "appell-ortho", "--f0", "1", "--f1", "0", "--f2", "2", "--emit", "recurrence", "--order", "3"]);
    assert!(out.starts_with("t u_0 = u_1"), "{out}");
}
