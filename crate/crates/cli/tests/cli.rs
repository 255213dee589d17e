use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn spturan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spturan"))
        .args(args)
        .env_remove("ST_TOL")
        .env_remove("ST_MAX_VERTICES")
        .env_remove("ST_THREADS")
        .env_remove("ST_CACHE_DIR")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spturan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn rho_of_c5() {
    let c5 = spturan(&["family", "Cycle", "--n", "5"]);
    let g6 = stdout(&c5);
    let r = json(&spturan(&["rho", g6.trim()]));
    assert!((r["rho"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(r["certificate"], serde_json::json!([1, -2]));
}

#[test]
fn family_pipes_into_rho() {
    let g6 = stdout(&spturan(&["family", "Snk", "--n", "9", "--k", "1"]));
    let out = with_stdin(&["--output", "plain", "rho", "-"], &g6);
    assert!(out.status.success());
    let rho: f64 = stdout(&out).trim().parse().unwrap();
    assert!((rho - 3.0).abs() < 1e-9);
}

#[test]
fn family_json_record() {
    let r = json(&spturan(&["family", "CompleteBipartite", "--a", "2", "--b", "3", "--json"]));
    assert_eq!(r["n"], 5);
    assert_eq!(r["m"], 6);
    assert_eq!(r["degree_sequence"], serde_json::json!([3, 3, 2, 2, 2]));
}

#[test]
fn verify_c4_plus_suite_holds_at_nine() {
    let out = spturan(&["verify", "--suite", "t14", "--m", "9", "--threads", "2"]);
    let r = json(&out);
    assert_eq!(r["status"], "holds");
    assert_eq!(r["params"]["config"]["threads"], 2);
}

#[test]
fn motif_witness_and_poly() {
    let k4 = "C~";
    let r = json(&spturan(&["motif", k4, "--find", "c4"]));
    assert_eq!(r["found"], true);
    assert_eq!(r["witness"].as_array().unwrap().len(), 4);
    let p = json(&spturan(&["poly", "lemma22", "--m", "40", "--k", "1", "--root"]));
    assert!(p["largest_root"].as_f64().unwrap() > 39f64.sqrt());
}

#[test]
fn compare_is_exact_on_ties() {
    // K_{1,4} and C4 both have spectral radius 2
    let star = stdout(&spturan(&["family", "Star", "--n", "4"]));
    let c4 = stdout(&spturan(&["family", "Cycle", "--n", "4"]));
    let r = json(&spturan(&["compare", star.trim(), c4.trim()]));
    assert_eq!(r["order"], "equal");
}

#[test]
fn enumerate_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = json(&spturan(&["--cache-dir", d, "enumerate", "--m", "7", "--filter", "c4free", "--extremal"]));
    assert_eq!(first["cached"], false);
    let second = json(&spturan(&["--cache-dir", d, "enumerate", "--m", "7", "--filter", "c4free", "--extremal"]));
    assert_eq!(second["cached"], true);
    assert_eq!(first["count"], second["count"]);
    assert_eq!(first["extremal"], second["extremal"]);

    let lines = stdout(&spturan(&["enumerate", "--m", "4", "--emit", "g6"]));
    assert_eq!(lines.lines().count(), 11);
}

#[test]
fn exit_codes() {
    assert_eq!(spturan(&["bogus"]).status.code(), Some(2));
    assert_eq!(spturan(&["rho", "not-a-graph!"]).status.code(), Some(2));
    assert_eq!(spturan(&["verify", "--suite", "nope", "--m", "9"]).status.code(), Some(2));
    assert_eq!(spturan(&["enumerate", "--m", "40"]).status.code(), Some(3));
    assert_eq!(spturan(&["--max-vertices", "3", "rho", "Dhc"]).status.code(), Some(3));
    assert_eq!(spturan(&["--help"]).status.code(), Some(0));
}

#[test]
fn env_config_is_overridden_by_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_spturan"))
        .args(["--max-vertices", "10", "rho", "Dhc"])
        .env("ST_MAX_VERTICES", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_spturan"))
        .args(["rho", "Dhc"])
        .env("ST_MAX_VERTICES", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
