//! End-to-end runs of the `saespec` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn saespec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saespec"))
        .args(args)
        .env_remove("SAESPEC_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const COULOMB: &[&str] = &["--m", "1", "--l", "0", "--p", "0.25", "--coulomb", "-1"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn classify_reports_two_branch() {
    let o = saespec(&["classify", "--m", "0.5", "--l", "0", "--v0", "0.21"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["analysis"]["regime"], "TWO_BRANCH");
    assert!((v["analysis"]["p"].as_f64().unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn spectrum_is_deterministic() {
    let args = with(&["spectrum"], &with(COULOMB, &["--tau", "-1", "--count", "4"]));
    let a = saespec(&args);
    let b = saespec(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let states = json(&a)["spectrum"]["states"].as_array().unwrap().clone();
    assert_eq!(states.len(), 4);
    let energies: Vec<f64> = states.iter().map(|s| s["energy"].as_f64().unwrap()).collect();
    assert!(energies.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn special_tau_gives_closed_forms() {
    let o = saespec(&with(&["spectrum"], &with(COULOMB, &["--theta", "0", "--count", "2"])));
    let v = json(&o);
    let e0 = v["spectrum"]["states"][0]["energy"].as_f64().unwrap();
    // -m alpha^2 / (2 (1/2 + P)^2)
    assert!((e0 + 1.0 / (2.0 * 0.75 * 0.75)).abs() < 1e-14);
    assert_eq!(v["spectrum"]["states"][0]["source"], "closed_form");
}

#[test]
fn round_trip_through_oracle_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("spectrum.json");
    let o = saespec(&with(&["spectrum"], &with(COULOMB, &["--tau", "0.5", "--count", "3"])));
    std::fs::write(&report, &o.stdout).unwrap();
    let v = saespec(&["oracle-verify", "--input", report.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    let out = json(&v);
    assert_eq!(out["verification"]["pass"], true);
    assert!(out["verification"]["max_relative_deviation"].as_f64().unwrap() < 1e-6);
}

fn tamper(report: &Path) {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let e = v["spectrum"]["states"][1]["energy"].as_f64().unwrap();
    v["spectrum"]["states"][1]["energy"] = Value::from(e * 1.01);
    std::fs::write(report, serde_json::to_string(&v).unwrap()).unwrap();
}

#[test]
fn verification_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("spectrum.json");
    let o = saespec(&with(&["spectrum"], &with(COULOMB, &["--tau", "-1", "--count", "3"])));
    std::fs::write(&report, &o.stdout).unwrap();
    tamper(&report);
    let v = saespec(&["oracle-verify", "--input", report.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(3));
    assert_eq!(json(&v)["verification"]["pass"], false);
}

#[test]
fn library_errors_exit_two() {
    // hydrogen has no additional branch
    let o = saespec(&["spectrum", "--m", "1", "--l", "0", "--v0", "0", "--coulomb", "-1", "--tau", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(saespec(&["nonsense"]).status.code(), Some(1));
    assert_eq!(saespec(&["spectrum", "--tau", "1", "--theta", "0"]).status.code(), Some(1));
    assert_eq!(saespec(&["spectrum", "--format", "csv", "--v0", "0.1"]).status.code(), Some(1));
    assert_eq!(saespec(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_writes_csv_rows_in_grid_order() {
    let o = saespec(&with(
        &["sweep"],
        &with(COULOMB, &["--param", "tau", "--min", "-2", "--max", "-0.5", "--grid-count", "4", "--count", "2"]),
    ));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,value,level,energy,n_r,lambda,branch,status"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    let values: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    assert!(rows.iter().all(|r| r[0] == "tau" && r[7] == "ok"), "{text}");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# attractive Coulomb\nm = 1\nl = 0\np = 0.25\ncoulomb = -1\ntau = -1\ncount = 2\n").unwrap();
    let base = saespec(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(base.status.code(), Some(0), "{}", String::from_utf8_lossy(&base.stderr));
    assert_eq!(json(&base)["config"]["count"], 2);
    let over = saespec(&["spectrum", "--config", cfg.to_str().unwrap(), "--theta", "0", "--count", "3"]);
    let v = json(&over);
    assert_eq!(v["config"]["count"], 3);
    assert_eq!(v["spectrum"]["states"][0]["branch"], "standard");
}

#[test]
fn relative_output_goes_to_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_saespec"))
        .args(["classify", "--v0", "0.1", "--output", "classify.json"])
        .env("SAESPEC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("classify.json")).unwrap()).unwrap();
    assert_eq!(written["config"]["command"], "classify");
}

#[test]
fn specfun_eval_prints_full_precision() {
    let o = saespec(&["specfun-eval", "--function", "gamma", "--args", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let x: f64 = stdout(&o).trim().parse().unwrap();
    assert!((x - std::f64::consts::PI.sqrt()).abs() < 1e-15 * x);
    assert!(stdout(&o).trim().contains("e0"));
}
