use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;

use mixphase::analysis::SweepRow;
use mixphase::cli::{rows_to_csv, run};
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["mixphase"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", o.stdout))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixphase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn csv_phases(text: &str) -> Vec<f64> {
    text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect()
}

fn jumps(phases: &[f64]) -> usize {
    phases.windows(2).filter(|w| (w[1] - w[0]).abs() > PI / 2.0).count()
}

#[test]
fn uhlmann_phase_is_pi_when_cold() {
    let o = invoke(&[
        "phase", "--model", "three-level", "--phase", "uhlmann", "--loop", "meridian", "--omega", "1", "--R", "1",
        "--T", "0.5", "--method", "closed",
    ]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert!((v["phase"].as_f64().unwrap() - PI).abs() < 1e-12);
    for key in ["re_g", "im_g", "phase", "visibility", "g", "residuals"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn hot_two_level_equator_keeps_the_branch_value() {
    let o = invoke(&[
        "phase", "--model", "two-level", "--phase", "interferometric", "--loop", "equator", "--omega", "1", "--R", "1",
        "--T", "1e9",
    ]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert!((v["phase"].as_f64().unwrap().abs() - PI).abs() < 1e-9);
    assert!((v["visibility"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn both_methods_agree_for_the_uhlmann_phase() {
    let o = invoke(&["phase", "--phase", "uhlmann", "--method", "both", "--T", "1.0", "--n-steps", "4000", "--strict"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert!(v["abs_diff_g"].as_f64().unwrap() <= 1e-6);
    assert!(v["closed"]["phase"].is_number() && v["numeric"]["phase"].is_number());
    assert!(v["numeric"]["residuals"]["uhlmann_parallel"].as_f64().unwrap() < 1e-4);
}

#[test]
fn strict_mode_flags_method_disagreement() {
    let args = ["phase", "--phase", "interferometric", "--method", "both", "--T", "1.0", "--n-steps", "64"];
    assert_eq!(invoke(&args).code, 0);
    let mut strict = args.to_vec();
    strict.push("--strict");
    let o = invoke(&strict);
    assert_eq!(o.code, 2);
    assert!(json(&o)["abs_diff_g"].as_f64().unwrap() > 1.0);
}

#[test]
fn both_phases_nest_by_kind() {
    let v = json(&invoke(&["phase", "--phase", "both", "--T", "0.5"]));
    assert!(v["interferometric"]["phase"].is_number());
    assert!(v["uhlmann"]["phase"].is_number());
}

#[test]
fn zero_amplitude_is_a_numerical_error() {
    let o = invoke(&["phase", "--omega", "2", "--T", &format!("{}", 2.0 / 2f64.ln())]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["code"], "zero_amplitude");
}

#[test]
fn missing_temperature_is_a_usage_error() {
    let o = invoke(&["phase"]);
    assert_eq!(o.code, 1);
    assert!(json(&o)["error"]["message"].as_str().unwrap().contains("--T"));
}

#[test]
fn sweep_writes_full_precision_csv() {
    let o = invoke(&["sweep", "--omega", "2", "--t-min", "1", "--t-max", "5", "--n-points", "5"]);
    assert_eq!(o.code, 0);
    let mut lines = o.stdout.split('\n');
    assert_eq!(lines.next().unwrap(), "T,re_g,im_g,visibility,g,phase");
    assert_eq!(o.stdout.lines().count(), 6);
    assert!(!o.stdout.contains('\r'));
    let row: Vec<&str> = o.stdout.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 6);
    let re_g: f64 = row[1].parse().unwrap();
    assert_eq!(format!("{re_g:.16e}"), row[1]);
}

#[test]
fn undefined_rows_use_nan_and_inf_literals() {
    let row = SweepRow { t: 2.0, re_g: 0.0, im_g: 0.0, visibility: 0.0, g: f64::INFINITY, phase: f64::NAN, error: None };
    let text = rows_to_csv(&[row]);
    assert_eq!(text.lines().nth(1).unwrap(), "2.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,inf,nan");
}

#[test]
fn sweeps_reproduce_the_figure_structure() {
    for (phase, omega, expected) in [("interferometric", "1", 0), ("interferometric", "2", 1), ("uhlmann", "1", 1), ("uhlmann", "2", 2)] {
        let o = invoke(&["sweep", "--phase", phase, "--omega", omega, "--t-min", "0.2", "--t-max", "6", "--n-points", "400"]);
        assert_eq!(o.code, 0);
        assert_eq!(jumps(&csv_phases(&o.stdout)), expected, "{phase} omega {omega}");
    }
}

#[test]
fn single_point_grid_is_rejected() {
    assert_eq!(invoke(&["sweep", "--n-points", "1"]).code, 1);
    assert_eq!(invoke(&["sweep", "--t-min", "0"]).code, 1);
    assert_eq!(invoke(&["sweep", "--n-steps", "4", "--method", "numeric"]).code, 1);
}

#[test]
fn sweep_accepts_only_one_method() {
    assert_eq!(invoke(&["sweep", "--method", "both"]).code, 1);
}

#[test]
fn sweep_json_format() {
    let o = invoke(&["sweep", "--format", "json", "--n-points", "3"]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["sweep", "--phase", "uhlmann", "--method", "numeric", "--n-steps", "64", "--n-points", "40"];
    let a = invoke(&args).stdout;
    let b = invoke(&args).stdout;
    let mut threaded = args.to_vec();
    threaded.extend_from_slice(&["--threads", "3"]);
    let c = invoke(&threaded).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn output_flag_writes_a_file() {
    let path = scratch("sweep.csv");
    let o = invoke(&["sweep", "--n-points", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("T,re_g,im_g,visibility,g,phase\n"));
}

#[test]
fn find_tc_cases() {
    let o = invoke(&["find-tc", "--omega", "2", "--R", "1"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert!((v["tc"].as_f64().unwrap() - 2.885390).abs() < 1e-6);
    assert!(v["iterations"].as_u64().is_some() && v["visibility_at_tc"].is_number());

    let v = json(&invoke(&["find-tc", "--phase", "uhlmann", "--omega", "1"]));
    let tc = v["tc"].as_f64().unwrap();
    assert!((0.7333..=0.7343).contains(&tc));

    let o = invoke(&["find-tc", "--omega", "1"]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["code"], "no_bracket");

    assert_eq!(invoke(&["find-tc", "--t-lo", "1"]).code, 1);
}

#[test]
fn config_file_values_yield_to_flags() {
    let path = scratch("config.json");
    std::fs::write(&path, r#"{"phase": "uhlmann", "omega": 1, "T": 0.5, "R": 1.0}"#).unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&invoke(&["phase", "--config", p]));
    assert!((from_file["phase"].as_f64().unwrap() - PI).abs() < 1e-12);
    let overridden = json(&invoke(&["phase", "--config", p, "--T", "0.9"]));
    assert_eq!(overridden["phase"].as_f64().unwrap(), 0.0);

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"temperature": 1}"#).unwrap();
    assert_eq!(invoke(&["phase", "--config", bad.to_str().unwrap()]).code, 1);
    assert_eq!(invoke(&["phase", "--config", "/nonexistent/config.json", "--T", "1"]).code, 1);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(invoke(&["phase", "--bogus"]).code, 1);
    assert_eq!(invoke(&["teleport"]).code, 1);
    assert_eq!(invoke(&["phase", "--model", "four-level", "--T", "1"]).code, 1);
    assert_eq!(invoke(&["phase", "--R", "-1", "--T", "1"]).code, 1);
    let help = invoke(&["--help"]);
    assert_eq!(help.code, 0);
    for sub in ["phase", "sweep", "find-tc", "verify"] {
        assert!(help.stderr.contains(sub));
    }
}

#[test]
fn verify_single_check_passes() {
    let o = invoke(&["verify", "--check", "non-transitivity"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("non-transitivity") && o.stdout.contains("PASS"));
    assert_eq!(invoke(&["verify", "--check", "no-such-check"]).code, 1);
}

#[test]
fn coarse_verify_keeps_convergence_checks_but_fails_thresholds() {
    let o = invoke(&["verify", "--n-steps", "16"]);
    assert_eq!(o.code, 2);
    let line = |name: &str| o.stdout.lines().find(|l| l.starts_with(name)).unwrap().to_string();
    assert!(line("holonomy-convergence ").contains("PASS"));
    assert!(line("uhlmann-residual-convergence ").contains("PASS"));
    assert!(line("uhlmann-residual ").contains("FAIL"));
    assert!(line("holonomy-closed-form ").contains("FAIL"));
}

#[test]
fn default_verify_fails_only_on_the_printed_interferometric_form() {
    let o = invoke(&["verify"]);
    assert_eq!(o.code, 2);
    let failed: Vec<&str> = o.stdout.lines().filter(|l| l.contains(" FAIL ")).map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(failed, ["dual-process-interferometric"]);
}

#[test]
fn binary_uses_the_same_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mixphase");
    let ok = Command::new(bin).args(["phase", "--T", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["sweep", "--n-points", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let numeric = Command::new(bin).args(["find-tc", "--omega", "3"]).output().unwrap();
    assert_eq!(numeric.status.code(), Some(2));
}
