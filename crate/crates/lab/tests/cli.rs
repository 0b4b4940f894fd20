use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_orlicz-lab"));
    c.env_remove("ORLICZ_LAB_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orlicz-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn seed_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).lines().find(|l| l.starts_with("# seed")).unwrap().to_string()
}

#[test]
fn conjugate_rows_match_closed_form() {
    let out = run(&["young", "conjugate", "--phi", "pnorm:3", "--at", "0.5,2"]);
    assert_eq!(out.status.code(), Some(0));
    for row in json_lines(&out) {
        let y = row["y"].as_f64().unwrap();
        let psi = row["psi"].as_f64().unwrap();
        let q: f64 = 1.5;
        assert!((psi - y.powf(q) / q).abs() < 1e-8 * psi.max(1.0));
    }
}

#[test]
fn ball_listing_has_expected_size() {
    let out = run(&["group", "ball", "--group", "z2", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["size"], 25);
}

#[test]
fn norm_of_point_mass() {
    let v = scratch("point.txt", "# one entry\n1,0,2,0\n");
    let out = run(&["norm", "--phi", "pnorm:2", "--group", "z2", "--vec", v.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_lines(&out)[0];
    // N = |z|/√2 and the Orlicz norm is |z|√2 for Φ = x²/2
    assert!((row["luxemburg"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    assert!((row["orlicz"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-6);
}

#[test]
fn convolution_of_point_masses() {
    let f = scratch("f.txt", "1,1,1,0\n");
    let g = scratch("g.txt", "1,0,0,3\n");
    let out = run(&[
        "conv", "--group", "z2", "--cocycle", "poly:1", "--f", f.to_str().unwrap(), "--g", g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // ω₁((2,1))/(ω₁((1,1))ω₁((1,0))) = 4/6
    let text = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<f64> = text.trim().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(&fields[..2], &[2.0, 1.0]);
    assert!(fields[2].abs() < 1e-15);
    assert!((fields[3] - 2.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["cocycle", "check", "--group", "z2", "--cocycle", "poly:2", "--radius", "3"]).status.code(), Some(0));
    let strict = scratch("strict.toml", "[tolerances]\n\"cocycle.identity\" = 0.0\n");
    let out = run(&[
        "--config",
        strict.to_str().unwrap(),
        "cocycle",
        "check",
        "--group",
        "z2",
        "--cocycle",
        "subexp:0.5:1&phase:0.7",
        "--radius",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["young", "conjugate", "--phi", "bogus", "--at", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--config", "/nonexistent/cfg.toml", "verify"]).status.code(), Some(2));
    let bad = scratch("bad.toml", "[run]\nsamples = 0\n");
    assert_eq!(run(&["--config", bad.to_str().unwrap(), "verify"]).status.code(), Some(2));
}

#[test]
fn config_precedence() {
    let env_cfg = scratch("env.toml", "[run]\nseed = 5\n");
    let file_cfg = scratch("file.toml", "[run]\nseed = 7\n");
    let verify = |extra: &[&str], env: bool| {
        let mut c = bin();
        if env {
            c.env("ORLICZ_LAB_CONFIG", &env_cfg);
        }
        c.args(extra).args(["verify", "--suite", "growth"]).output().unwrap()
    };
    assert_eq!(seed_line(&verify(&[], false)), "# seed = 42");
    assert_eq!(seed_line(&verify(&[], true)), "# seed = 5");
    let f = file_cfg.to_str().unwrap();
    assert_eq!(seed_line(&verify(&["--config", f], true)), "# seed = 7");
    assert_eq!(seed_line(&verify(&["--config", f, "--seed", "9"], true)), "# seed = 9");
}

#[test]
fn table_format_is_aligned() {
    let out = run(&["--format", "table", "group", "growth", "--group", "z3", "--max-r", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).trim_start().starts_with('{'));
}
