use std::path::Path;
use std::process::{Command, Output};

use harmonics::config::Format;
use harmonics::report::{Bound, ResidualReport, Row, CSV_HEADER};

fn harmonics(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonics")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn report(out: &Output) -> ResidualReport {
    ResidualReport::read_csv(&out.stdout[..]).expect("csv report on stdout")
}

#[test]
fn decompose_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "e.json", r#"{"a": [1, 0], "b": [0, 0], "c": [0, 0], "d": [1, 0]}"#);
    let out = harmonics(&["decompose", "--input", &input]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["euler"], serde_json::json!([0.0, 0.0, 0.0]));
    assert_eq!(v["t"], serde_json::json!(0.0));
    assert_eq!(v["n"], serde_json::json!([0.0, 0.0]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS iwasawa.round_trip"));
}

#[test]
fn decompose_rejects_non_unimodular_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.json", r#"{"a": [2, 0], "b": [0, 0], "c": [0, 0], "d": [1, 0]}"#);
    let out = harmonics(&["decompose", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("determinant"));
}

#[test]
fn empty_report_is_header_only() {
    let bytes = ResidualReport::default().to_bytes(Format::Csv).unwrap();
    assert_eq!(String::from_utf8(bytes).unwrap(), format!("{CSV_HEADER}\n"));
    assert_eq!(ResidualReport::default().to_bytes(Format::Json).unwrap(), b"[]\n");
}

#[test]
fn one_row_parses_back() {
    let mut r = ResidualReport::default();
    r.push(Row::new("k.plancherel", "a, b = c", 3.25e-13, Bound::AtMost(1e-10), 17));
    let text = String::from_utf8(r.to_bytes(Format::Csv).unwrap()).unwrap();
    assert!(text.starts_with(CSV_HEADER));
    let back = ResidualReport::read_csv(text.as_bytes()).unwrap();
    assert_eq!(back, r);
    assert!(ResidualReport::read_csv("a,b\n1,2\n".as_bytes()).is_err());
}

#[test]
fn plancherel_on_k() {
    let out = harmonics(&["plancherel", "--target", "k", "--jmax-twice", "4"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.rows[0].identity, "k.plancherel");
    assert!(r.rows[0].residual <= 1e-10);
    assert_eq!(r.rows[0].ms, 0);
}

#[test]
fn fixed_seed_gives_identical_bytes() {
    let run = |seed: &str| harmonics(&["plancherel", "--target", "k", "--seed", seed, "--format", "json"]).stdout;
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("table.csv");
    let cfg = write(
        dir.path(),
        "job.json",
        &format!(
            r#"{{"command": "transform-g", "jmax_twice": 1, "seed": 4,
                "grids": {{"z": {{"L": 6.0, "m": 16}}, "t": {{"L": 3.0, "m": 16}},
                          "lambda": {{"L": 6.0, "m": 8}}, "xi": {{"L": 3.0, "m": 8}}}},
                "output": {{"path": {:?}, "format": "json"}}}}"#,
            out_path.to_str().unwrap()
        ),
    );
    let out = harmonics(&["--config", &cfg, "--format", "csv"]);
    // frequency grids this coarse truncate the spectrum, so the row fails
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("FAIL g.plancherel"));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("two_j,lambda,xi1,xi2,hs_norm"));
    assert_eq!(lines.count(), 2 * 8 * 8 * 8);
}

#[test]
fn bad_configs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(dir.path(), "a.json", r#"{"grid": {}}"#);
    let out = harmonics(&["verify-all", "--config", &unknown]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
    let out = harmonics(&["plancherel", "--jmax-twice", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let out = harmonics(&[]);
    assert_eq!(out.status.code(), Some(2));
    let out = harmonics(&["wigner", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_harmonics"))
        .args(["plancherel"])
        .env("HARMONICS_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn data_commands() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    let out = harmonics(&["wigner", "--jmax-twice", "2", "--report", rep.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
    let r = ResidualReport::read_json(std::fs::File::open(&rep).unwrap()).unwrap();
    assert!(r.all_pass());

    let out = harmonics(&["transform-k", "--jmax-twice", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["jmax_twice"], 3);

    let input = write(dir.path(), "l.json", r#"{"element": {"a": [1, 0], "b": [0.5, 0.5], "c": [0, 0], "d": [1, 0]}, "vectors": [[1, 0, 0, 0]]}"#);
    let out = harmonics(&["lorentz", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class"], "SO31Plus");
    assert_eq!(v["images"].as_array().unwrap().len(), 1);

    let out = harmonics(&["convolve", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);

    let table = dir.path().join("p.csv");
    let out = harmonics(&["transform-p", "--out", table.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.starts_with("two_j,eta1,eta2,eta3,eta4,lambda,xi1,xi2,hs_norm\n"));
    assert_eq!(text.lines().count(), 1 + (1 << 21));
}

#[test]
fn lists_identities() {
    let out = harmonics(&["--list-identities"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), harmonics::verify::IDENTITIES.len());
    assert!(text.lines().all(|l| l.split('\t').count() == 3));
}
