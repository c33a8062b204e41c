use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qsynd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsynd"))
        .args(args)
        .env_remove("QSYND_SEED")
        .output()
        .expect("spawn qsynd")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const REP3: &str = r#"{"L":1,"rows":2,"cols":3,"exponents":[[0,0,-1],[-1,0,0]]}"#;

#[test]
fn build_code_tanner() {
    let dir = TempDir::new().unwrap();
    let out = qsynd(&["build-code", "--tanner", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "n=1054 k=140 css=ok");
    assert!(dir.path().join("hx.alist").exists());
    assert!(dir.path().join("hz.alist").exists());
}

#[test]
fn build_code_single_entry_base() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"L":3,"rows":1,"cols":1,"exponents":[[1]]}"#);
    let out = qsynd(&["build-code", "--base-a", &a, "--base-b", &a, "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("n=6 "), "{}", stdout(&out));
}

#[test]
fn build_code_repetition_hypergraph_product() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "rep.json", REP3);
    let out = qsynd(&["build-code", "--base-a", &a, "--base-b", &a, "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "n=13 k=1 css=ok");
}

#[test]
fn build_code_rejects_malformed_base() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"L":2,"rows":1,"cols":2,"exponents":[[0]]}"#);
    let out = qsynd(&["build-code", "--base-a", &bad, "--base-b", &bad, "--out", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn validate_round_trips_alist() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = write(dir.path(), "rep.json", REP3);
    assert!(qsynd(&["build-code", "--base-a", &a, "--base-b", &a, "--out", d]).status.success());
    let hx = dir.path().join("hx.alist");
    let hz = dir.path().join("hz.alist");
    let out = qsynd(&["validate", "--hx", hx.to_str().unwrap(), "--hz", hz.to_str().unwrap()]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("n=13 k=1"), "{s}");
    assert!(s.contains("css=ok"), "{s}");
}

#[test]
fn validate_reports_non_commuting_pair() {
    let dir = TempDir::new().unwrap();
    let hx = write(dir.path(), "hx.alist", "1 2\n1\n1\n");
    let hz = write(dir.path(), "hz.alist", "1 2\n2\n1 2\n");
    let out = qsynd(&["validate", "--hx", &hx, "--hz", &hz]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("css=fail"));
}

#[test]
fn decode_one_zero_error() {
    let dir = TempDir::new().unwrap();
    let e = write(dir.path(), "e.txt", &"I".repeat(13));
    let out = qsynd(&["decode-one", "--builtin", "hgp_rep3", "--error", &e, "--sigma", "0.3"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("iterations_x=1"), "{s}");
    assert!(s.contains("iterations_z=1"), "{s}");
    assert!(s.contains("classification=SUCCESS"), "{s}");
}

#[test]
fn decode_one_seeded_weight_one_perfect() {
    for seed in ["1", "2", "3"] {
        let out = qsynd(&[
            "decode-one", "--tanner", "--weight", "1", "--seed", seed, "--mode", "perfect",
        ]);
        assert!(out.status.success());
        let s = stdout(&out);
        assert!(s.contains("error_weight=1"), "{s}");
        assert!(s.contains("classification=SUCCESS"), "{s}");
    }
}

#[test]
fn decode_one_writes_trace_and_noise() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.csv");
    let noise = dir.path().join("noise.csv");
    let out = qsynd(&[
        "decode-one", "--builtin", "hgp_rep3", "--weight", "1", "--seed", "7", "--sigma", "0.3",
        "--trace", trace.to_str().unwrap(), "--dump-noise", noise.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let t = fs::read_to_string(trace).unwrap();
    assert!(t.starts_with("side,iteration,edge,check,variable,nu,mu,s_tilde,flipped\n"));
    assert!(t.lines().skip(1).all(|l| l.starts_with("x,") || l.starts_with("z,")));
    let n = fs::read_to_string(noise).unwrap();
    assert!(n.starts_with("side,trial,check,raw,llr\n"));
    assert_eq!(n.lines().count(), 1 + 6 + 6);
}

#[test]
fn decode_one_rejects_wrong_length_error() {
    let dir = TempDir::new().unwrap();
    let e = write(dir.path(), "e.txt", "XIZ");
    let out = qsynd(&["decode-one", "--builtin", "hgp_rep3", "--error", &e]);
    assert!(!out.status.success());
}

fn sweep_config(dir: &Path, body: &str) -> String {
    write(dir, "sweep.json", body)
}

const SMALL_SWEEP: &str = r#"{
  "code": {"builtin": "hgp_rep3"},
  "p_grid": [0.05, 0.1],
  "sigma_grid": [0.3],
  "modes": ["perfect", "hard", "soft"],
  "stop_rule": {"trials": 3000},
  "master_seed": 11
}"#;

#[test]
fn sweep_is_independent_of_worker_count() {
    let dir = TempDir::new().unwrap();
    let cfg = sweep_config(dir.path(), SMALL_SWEEP);
    let one = dir.path().join("one.csv");
    let eight = dir.path().join("eight.csv");
    assert!(qsynd(&["sweep", "--config", &cfg, "--out", one.to_str().unwrap(), "--workers", "1"]).status.success());
    assert!(qsynd(&["sweep", "--config", &cfg, "--out", eight.to_str().unwrap(), "--workers", "8"]).status.success());
    let a = fs::read(&one).unwrap();
    assert_eq!(a, fs::read(&eight).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 2 + 6);
}

#[test]
fn sweep_seed_env_overrides_config() {
    let dir = TempDir::new().unwrap();
    let cfg = sweep_config(dir.path(), SMALL_SWEEP);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let run = |out: &Path| {
        Command::new(env!("CARGO_BIN_EXE_qsynd"))
            .args(["sweep", "--config", &cfg, "--out", out.to_str().unwrap()])
            .env("QSYND_SEED", "99")
            .output()
            .unwrap()
    };
    assert!(run(&a).status.success());
    assert!(run(&b).status.success());
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.lines().nth(2).unwrap().ends_with(",99"));
}

#[test]
fn sweep_noiseless_zero_rate() {
    let dir = TempDir::new().unwrap();
    let cfg = sweep_config(
        dir.path(),
        r#"{"code": {"builtin": "lp_tanner"}, "p_grid": [0.0], "sigma_grid": [0.0],
            "modes": ["perfect", "hard", "soft"], "stop_rule": {"trials": 100}}"#,
    );
    let out = dir.path().join("out.csv");
    assert!(qsynd(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]).status.success());
    let text = fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let ler = header.iter().position(|h| *h == "ler").unwrap();
    let trials = header.iter().position(|h| *h == "trials").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r[trials], "100");
        assert_eq!(r[ler].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn sweep_rejects_invalid_config() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.csv");
    for body in [
        r#"{"code": {"builtin": "lp_tanner"}, "p_grid": [1.5], "sigma_grid": [0.3], "modes": ["soft"], "stop_rule": {"trials": 10}}"#,
        r#"{"code": {"builtin": "lp_tanner"}, "p_grid": [0.1], "sigma_grid": [0.3], "modes": ["fuzzy"], "stop_rule": {"trials": 10}}"#,
        r#"{"code": {"builtin": "nope"}, "p_grid": [0.1], "sigma_grid": [0.3], "modes": ["soft"], "stop_rule": {"trials": 10}}"#,
        "not json",
    ] {
        let cfg = sweep_config(dir.path(), body);
        let o = qsynd(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(!o.status.success(), "{body}");
        assert!(!out.exists());
    }
}
