//! Runs `verify-all` twice and prints one PASS/FAIL line per acceptance
//! criterion.
//!
//! Criterion 4 contains one row that is expected to fail: the factorization
//! identity with the convolution read as a true group convolution. The
//! assertions below pin that outcome rather than hide it.

use std::process::Command;

use harmonics::report::{ResidualReport, Row};

const CRITERIA: &[(&str, &str)] = &[
    ("1", "iwasawa."),
    ("2", "haar."),
    ("3", "k."),
    ("4", "g."),
    ("5", "minkowski."),
    ("6", "poincare."),
];

const EXPECTED_RED: &str = "g.factorization_group_reading";

fn verify_all() -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_harmonics"))
        .args(["verify-all", "--seed", "1"])
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn line(id: &str, pass: bool, detail: &str) {
    println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
}

#[test]
fn acceptance() {
    let (code, first) = verify_all();
    let (_, second) = verify_all();
    let report = ResidualReport::read_csv(&first[..]).expect("csv report");

    let mut unexpected = Vec::new();
    for (id, prefix) in CRITERIA {
        let rows: Vec<&Row> = report.rows.iter().filter(|r| r.identity.starts_with(prefix)).collect();
        assert!(!rows.is_empty(), "criterion {id} has no rows");
        let failed: Vec<&Row> = rows.iter().copied().filter(|r| !r.pass).collect();
        let detail = if failed.is_empty() {
            format!("{} rows within tolerance", rows.len())
        } else {
            failed.iter().map(|r| format!("{} residual {:e} vs {}", r.identity, r.residual, r.tolerance)).collect::<Vec<_>>().join("; ")
        };
        line(id, failed.is_empty(), &detail);
        unexpected.extend(failed.into_iter().filter(|r| r.identity != EXPECTED_RED).map(|r| r.identity.clone()));
    }
    let deterministic = first == second;
    line("7", deterministic, &format!("two runs, {} vs {} bytes, identical = {deterministic}", first.len(), second.len()));

    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    assert!(deterministic);
    let red = report.rows.iter().find(|r| r.identity == EXPECTED_RED).unwrap();
    let coordinate = report.rows.iter().find(|r| r.identity == "g.factorization_coordinate_reading").unwrap();
    // the group reading misses by an O(1) factor; the coordinate reading holds
    assert!(!red.pass && red.residual > 0.1, "{red:?}");
    assert!(coordinate.pass, "{coordinate:?}");
    assert_eq!(code, Some(1));
}
