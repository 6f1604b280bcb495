use std::path::PathBuf;
use std::process::{Command, Output};

use kmhecke::DatumError;
use kmhecke_cli::commands::{self, Command as Sub, Options};
use kmhecke_cli::config::JobConfig;
use kmhecke_cli::error::CliError;

fn job(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("jobs").join(name)
}

fn kmhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmhecke"))
        .args(args)
        .env_remove("KMHECKE_CONFIG")
        .env_remove("KMHECKE_FORMAT")
        .env_remove("KMHECKE_SEED")
        .env_remove("KMHECKE_EXPECT")
        .env_remove("KMHECKE_BOUND_COROOT")
        .env_remove("KMHECKE_BOUND_LENGTH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn kato_a1_reports_reducible_with_witness() {
    let cfg = job("a1_kato.toml");
    let o = kmhecke(&["--config", cfg.to_str().unwrap(), "kato"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: Reducible"), "{out}");
    assert!(out.contains("witness:"), "{out}");
}

#[test]
fn expect_mismatch_is_a_negative_result() {
    let cfg = job("a1_kato.toml");
    let cfg = cfg.to_str().unwrap();
    assert_eq!(kmhecke(&["--config", cfg, "--expect", "irreducible", "kato"]).status.code(), Some(1));
    assert_eq!(kmhecke(&["--config", cfg, "--expect", "reducible", "kato"]).status.code(), Some(0));
}

#[test]
fn expect_can_come_from_the_environment() {
    let cfg = job("a1_kato.toml");
    let o = Command::new(env!("CARGO_BIN_EXE_kmhecke"))
        .args(["--config", cfg.to_str().unwrap(), "kato"])
        .env("KMHECKE_EXPECT", "irreducible")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_diagonal_exits_2() {
    let cfg = job("bad_diagonal.toml");
    let o = kmhecke(&["--config", cfg.to_str().unwrap(), "validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diagonal"));

    let parsed = JobConfig::load(&cfg).unwrap();
    let err = commands::run(Sub::Validate, Some(&parsed), &Options::default()).unwrap_err();
    assert!(matches!(err, CliError::Datum(DatumError::DiagonalNot2(0))), "{err:?}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(kmhecke(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(kmhecke(&["kato"]).status.code(), Some(2));
    assert_eq!(kmhecke(&["--config", "/nonexistent.toml", "kato"]).status.code(), Some(2));
    let cfg = job("a1_kato.toml");
    assert_eq!(kmhecke(&["--config", cfg.to_str().unwrap(), "--bound-coroot", "0", "kato"]).status.code(), Some(2));
    // no [vector] block
    assert_eq!(kmhecke(&["--config", cfg.to_str().unwrap(), "ord"]).status.code(), Some(2));
}

#[test]
fn odd_pair_golden_output() {
    let o = kmhecke(&["example-lemma37"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5/5 conjugates certified in S_tau"));
    let o = kmhecke(&["example-lemma37", "--parity-variant"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5/5 conjugates certified in S_tau"));
}

#[test]
fn json_report_is_deterministic_and_complete() {
    let cfg = job("affine_a1.toml");
    let args = ["--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "11", "analyze-tau"];
    let a = kmhecke(&args);
    let b = kmhecke(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["seed"], 11);
    assert_eq!(v["bounds"]["coroot_height"], 6);
    assert_eq!(v["bounds"]["weyl_length"], 4);
    assert_eq!(v["result"]["sigma_tau"].as_array().unwrap().len(), 2);
}

#[test]
fn command_line_bounds_override_the_file() {
    let cfg = job("affine_a1.toml");
    let o = kmhecke(&["--config", cfg.to_str().unwrap(), "--format", "json", "--bound-coroot", "4", "--bound-length", "2", "kato"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"]["coroot_height"], 4);
    assert_eq!(v["bounds"]["weyl_length"], 2);
    assert_eq!(v["result"]["verdict"]["length_bound"], 2);
}

#[test]
fn irrational_sqrt_q_switches_field() {
    let cfg = job("a2_sqrt.toml");
    let o = kmhecke(&["--config", cfg.to_str().unwrap(), "--format", "json", "validate"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "quadratic");
    assert_eq!(v["result"]["sigma"][0], "sqrt(2)");
}

#[test]
fn mixed_extensions_are_rejected() {
    let cfg = JobConfig::parse("[datum]\ncatalog = \"A1\"\n[parameters]\nq = 2\n[character]\nvalues = [\"sqrt(3)\"]\n").unwrap();
    let err = commands::run(Sub::Kato, Some(&cfg), &Options::default()).unwrap_err();
    assert!(matches!(err, CliError::Scalar(_)), "{err:?}");
}

#[test]
fn weight_space_and_ord_on_affine_a1() {
    let cfg = job("affine_a1.toml");
    let cfg = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&kmhecke(&["--config", cfg, "--format", "json", "weight-space"]).stdout).unwrap();
    assert_eq!(v["result"]["dimension"], v["result"]["r_tau_ball_size"]);
    let v: serde_json::Value = serde_json::from_slice(&kmhecke(&["--config", cfg, "--format", "json", "ord"]).stdout).unwrap();
    assert_eq!(v["result"]["ord"], 1);
    assert_eq!(v["result"]["probe"]["ord"], 1);
}

#[test]
fn every_catalog_job_validates_and_roots_lists() {
    for name in ["A1", "A1-half", "A2", "B2", "G2", "affine-A1", "rank3", "odd-pair", "odd-pair-parity"] {
        let cfg = JobConfig::parse(&format!("[datum]\ncatalog = \"{name}\"\n[parameters]\nq = 4\n")).unwrap();
        let out = commands::run(Sub::Validate, Some(&cfg), &Options::default()).unwrap();
        assert_eq!(out.exit, 0, "{name}");
        let roots = commands::run(Sub::Roots, Some(&cfg), &Options { bound_coroot: Some(3), ..Options::default() }).unwrap();
        assert!(roots.report["result"]["count"].as_u64().unwrap() >= 1, "{name}");
    }
}

#[test]
fn config_round_trips() {
    for name in ["a1_kato.toml", "bad_diagonal.toml", "affine_a1.toml", "a2_sqrt.toml"] {
        let cfg = JobConfig::load(&job(name)).unwrap();
        assert_eq!(JobConfig::parse(&cfg.to_toml()).unwrap(), cfg, "{name}");
    }
}

#[test]
fn verify_identities_is_seed_deterministic() {
    let a = kmhecke(&["--format", "json", "--seed", "5", "verify-identities"]);
    assert_eq!(a.status.code(), Some(0));
    let b = kmhecke(&["--format", "json", "--seed", "5", "verify-identities"]);
    assert_eq!(a.stdout, b.stdout);
}
