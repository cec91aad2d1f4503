//! End-to-end runs of the `ds-zero` binary.

use std::fs;
use std::process::{Command, Output};

fn ds_zero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ds-zero")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn help_succeeds() {
    let o = ds_zero(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sweep"));
}

#[test]
fn unknown_theory_is_a_usage_error() {
    let o = ds_zero(&["roots", "--theory", "nope", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("unknown theory"), "{err}");
}

#[test]
fn order_below_minimum_is_rejected() {
    let o = ds_zero(&["roots", "--theory", "cubic", "--order", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn short_extrapolation_is_a_numerical_failure() {
    let o = ds_zero(&["richardson", "--theory", "quartic", "--from", "2", "--to", "3", "--max-order", "6"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn quartic_order_four_polynomial() {
    let o = ds_zero(&["eliminate", "--theory", "quartic", "--order", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x^4 - (8/15)x^2 + 1/21"), "{}", stdout(&o));
}

#[test]
fn empty_range_writes_only_the_header() {
    let o = ds_zero(&["sweep", "--theory", "quartic", "--from", "5", "--to", "4", "--format", "csv"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(lines, ["n,re,im,residual,selected"]);
}

#[test]
fn config_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# quartic run\ntheory = quartic\norder = 5\nprecision = 128\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let o = ds_zero(&["roots", "--config", cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(manifest(&o).contains("order: 5") && manifest(&o).contains("precision=128"), "{}", manifest(&o));

    let o = ds_zero(&["roots", "--config", cfg, "--order", "6", "--precision", "192"]);
    assert!(o.status.success());
    assert!(manifest(&o).contains("order: 6") && manifest(&o).contains("precision=192"), "{}", manifest(&o));
}

#[test]
fn malformed_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "theory quartic\n").unwrap();
    let o = ds_zero(&["roots", "--config", cfg.to_str().unwrap(), "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_matches_standard_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let args = ["sweep", "--theory", "quartic", "--from", "2", "--to", "6", "--format", "csv"];
    let direct = ds_zero(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(ds_zero(&with_out).status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&direct));
}

#[test]
fn runs_are_deterministic() {
    let args = ["sweep", "--theory", "neg-quartic", "--from", "4", "--to", "8", "--format", "json"];
    let a = ds_zero(&args);
    let b = ds_zero(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_rows_parse() {
    let o = ds_zero(&["roots", "--theory", "quartic", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let roots = v["rows"][0]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
}

#[test]
fn exact_cubic_seed() {
    let o = ds_zero(&["exact", "--theory", "cubic", "--max-index", "2", "--format", "csv", "--digits", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("-0.729011132947"), "{}", stdout(&o));
}
