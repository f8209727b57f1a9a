use std::process::{Command, Output};

use serde_json::Value;

fn wmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmod")).args(args).env("WMOD_THREADS", "2").output().unwrap()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(out)))
}

#[test]
fn verify_exits_zero() {
    let o = wmod(&["verify", "--n", "2", "--a", "-1.5", "--kind", "bbl", "--cutoff", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o.stdout);
    assert_eq!(v["schema"], "wmod.report/1");
    assert_eq!(v["command"], "verify");
    assert_eq!(v["status"], "pass");
    for r in v["reports"].as_array().unwrap() {
        assert!(!r["claim"].as_str().unwrap().is_empty());
    }
}

#[test]
fn unitarity_failure_exits_one() {
    let o = wmod(&["unitarity", "--n", "2", "--a", "0.5", "--cutoff", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o.stdout);
    assert!(v["reports"][0]["max_defect"].as_f64().unwrap() > 0.0);
}

#[test]
fn guard_error_goes_to_stderr_with_exit_two() {
    let o = wmod(&["verify", "--n", "2", "--a", "2", "--kind", "bbl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let v = json(&o.stderr);
    assert_eq!(v["error"]["kind"], "guarded_parameter");
}

#[test]
fn usage_error_exits_two() {
    let o = wmod(&["verify", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o.stderr)["error"]["kind"], "usage");
}

#[test]
fn complex_parameters_parse() {
    let o = wmod(&["verify", "--n", "1", "--a", "-1.5+0.25i", "--kind", "deformed", "--cutoff", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("wmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sphere.json");
    let p = path.to_str().unwrap();
    let args = ["sphere", "--n", "2", "--k", "1,1", "--method", "monte-carlo", "--samples", "20000", "--seed", "9", "--format", "json", "--output", p];
    assert_eq!(wmod(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(wmod(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bound_csv_columns() {
    let o = wmod(&["bound", "--n", "2", "--a", "-0.5", "--k", "100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("L,value,running_sup"));
    assert_eq!(lines.count(), 100);
}

#[test]
fn classify_example() {
    let o = wmod(&["classify", "--form", "su", "--p", "1", "--q", "2", "--label", "N(-1/2,0)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let d = &json(&o.stdout)["reports"][0]["details"];
    assert_eq!(d["integrable"], true);
    assert_eq!(d["unitary"], true);
}

#[test]
fn global_check_and_jm() {
    let o = wmod(&["global-check", "--n", "2", "--sub", "X0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = wmod(&["jm", "--n", "2", "--a", "-0.5", "--kind", "deformed", "--cutoff", "4", "--level", "1", "--ladder", "20,40"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn unknown_kind_is_a_parse_error() {
    let o = wmod(&["verify", "--kind", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o.stderr)["error"]["kind"], "parse");
}
