use std::process::{Command, Output};

use serde::{Deserialize, Serialize};

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leviscope"))
        .args(args)
        .env_remove("LEVISCOPE_DEGREE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The documented `--json` layout.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct Report {
    command: String,
    inputs: std::collections::BTreeMap<String, String>,
    result: serde_json::Value,
    timing_ms: u64,
    version: String,
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let text = stdout(&o);
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let back: serde_json::Value = serde_json::to_value(&report).unwrap();
    assert_eq!(back, serde_json::from_str::<serde_json::Value>(&text).unwrap());
    (report, o.status.code().unwrap())
}

#[test]
fn check_levi_on_the_model() {
    let (r, code) = json(&["check-levi", &corpus("a-inf.poly")]);
    assert_eq!(code, 0);
    assert_eq!(r.command, "check-levi");
    assert_eq!(r.result["is_levi_flat"], true);
    assert_eq!(r.inputs["F"], "1/2*y1^2 + 1/2*y2^2 + 1/2*~y1^2 + 1/2*~y2^2");
}

#[test]
fn check_levi_rejects_the_sphere_with_a_witness() {
    let (r, code) = json(&["check-levi", &corpus("controls/sphere.poly")]);
    assert_eq!(code, 1);
    assert_eq!(r.result["is_levi_flat"], false);
    assert_eq!(r.result["witness"]["basis"], "dz1∧dz2∧d~z1∧d~z2");
    assert_eq!(r.result["witness"]["remainder"], "-2");
}

#[test]
fn ils_reports_c_of_d_infinity() {
    let (r, code) = json(&["ils", &corpus("d-inf.poly")]);
    assert_eq!(code, 0);
    assert_eq!(r.result["c"], 1);
    assert_eq!(r.result["is_ils"], true);
    assert_eq!(r.result["tau_generators"].as_array().unwrap().len(), 7);
    let text = stdout(&run(&["ils", &corpus("d-inf.poly")]));
    assert!(text.contains("c = 1"));
}

#[test]
fn ils_negative_verdicts() {
    let (r, code) = json(&["ils", &corpus("controls/not-in-i2.poly")]);
    assert_eq!((code, r.result["in_i2"].clone()), (1, false.into()));
    let (r, code) = json(&["ils", &corpus("germs/s1.poly")]);
    assert_eq!(code, 1);
    assert!(r.result["c"].is_null());
    assert_eq!(r.result["degree_cap"], 12);
}

#[test]
fn degree_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_leviscope"))
        .args(["--json", "ils", &corpus("germs/s1.poly")])
        .env("LEVISCOPE_DEGREE_CAP", "7")
        .output()
        .unwrap();
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.result["degree_cap"], 7);
    assert_eq!(r.result["history"].as_array().unwrap().last().unwrap()[0], 7);
    let bad = Command::new(env!("CARGO_BIN_EXE_leviscope"))
        .args(["ils", &corpus("d-inf.poly")])
        .env("LEVISCOPE_DEGREE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn classify_w1() {
    let (r, code) = json(&["classify", &corpus("w1.poly")]);
    assert_eq!(code, 0);
    assert_eq!(r.result["form"], "W_{1,∞}");
    let (r, code) = json(&["classify", &corpus("controls/not-in-i2.poly")]);
    assert_eq!((code, r.result.clone()), (1, serde_json::Value::Null));
}

#[test]
fn blowup_reproduces_the_chart_computation() {
    let (r, code) = json(&["blowup", &corpus("a-inf.poly"), "--center", "y1,y2,w1,w2"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["strict_transform"], "t^2 + s^2 + v^2 + 1");
    assert_eq!(r.result["multiplicity"], 2);
    assert_eq!(r.result["alpha_transform"], "t*u*dt + s*u*ds + (t^2 + s^2)*du");
    assert_eq!(r.result["alpha_multiplicity"], 1);
    let (r, _) = json(&[
        "blowup",
        &corpus("a-inf.poly"),
        "--center",
        "y1,y2,w1,w2",
        "--names",
        "y1=a,y2=b,w1=e,w2=c",
    ]);
    assert_eq!(r.result["strict_transform"], "a^2 + b^2 + c^2 + 1");
    let o = run(&["blowup", &corpus("a-inf.poly"), "--center", "y1,q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theorem_hypotheses() {
    let (r, code) = json(&["check-theorem-a", &corpus("a-inf.poly"), "--normal-form", "A"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["theorem"], "B");
    assert_eq!(r.result["conclusion"], "φ(M) = {Re(P) = 0}");
    let (r, code) = json(&["check-theorem-a", &corpus("a-inf-perturbed.poly"), "--normal-form", "A n=3"]);
    assert_eq!((code, r.result["theorem"].clone()), (0, "A".into()));
    let (r, code) = json(&["check-theorem-a", &corpus("a-inf-tilted.poly"), "--normal-form", "A"]);
    assert_eq!(code, 1);
    assert_eq!(r.result["levi_flat"], false);
    let o = run(&["check-theorem-a", &corpus("a-inf.poly"), "--normal-form", "E6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sing_complexify_segre() {
    let (r, _) = json(&["sing", &corpus("a-inf.poly")]);
    assert_eq!(r.result["dimension"], 2);
    let (r, _) = json(&["complexify", &corpus("a-inf.poly")]);
    assert_eq!(r.result["complexified"], "1/2*y1^2 + 1/2*y2^2 + 1/2*w1^2 + 1/2*w2^2");
    let (r, code) = json(&["segre", &corpus("quadrics/q24.poly"), "--point", "0, 0, 1/2"]);
    assert_eq!((code, r.result["degenerate"].clone()), (0, true.into()));
    let (r, _) = json(&["segre", &corpus("quadrics/q24.poly"), "--point", "1, 0, 0"]);
    assert_eq!(r.result["degenerate"], false);
    let o = run(&["segre", &corpus("quadrics/q24.poly"), "--point", "1, 0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two_and_a_position() {
    let o = run(&["ils", &corpus("controls/bad-syntax.poly")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad-syntax.poly:2:8:"), "{err}");
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check-levi", "/nonexistent.poly"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let a = json(&["ils", &corpus("germs/j2.poly")]).0;
    let b = json(&["ils", &corpus("germs/j2.poly")]).0;
    assert_eq!(
        Report { timing_ms: 0, ..a },
        Report { timing_ms: 0, ..b }
    );
}

#[test]
fn catalog_verify_lists_every_row() {
    let (r, code) = json(&["catalog", "verify"]);
    let germs = r.result["germs"].as_array().unwrap();
    assert_eq!(germs.len(), 9);
    assert_eq!(r.result["quadrics"].as_array().unwrap().len(), 5);
    assert!(r.result["quadrics"]
        .as_array()
        .unwrap()
        .iter()
        .all(|q| q["levi_flat"] == true));
    // The printed S_{1,∞} row and the |z|² control fail, so the sweep does too.
    assert_eq!(code, 1);
    let text = stdout(&run(&["catalog", "verify"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 13);
}
