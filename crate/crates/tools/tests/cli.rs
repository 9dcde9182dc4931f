use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use e6tools::report::{GradingReport, VerificationReport};

fn e6(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e6")).args(args).env("E6_CACHE_DIR", cache).output().expect("e6 runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

#[test]
fn stabilizer_of_3819() {
    let dir = tempfile::tempdir().unwrap();
    let out = e6(dir.path(), &["weyl", "stab", "3819"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Z3^3");
}

#[test]
fn build_writes_then_loads_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let first = stdout(&e6(dir.path(), &["weyl", "build"]));
    assert!(first.starts_with("51840 elements, identity at index 40843"));
    assert!(first.contains("cache: wrote"));
    let second = stdout(&e6(dir.path(), &["weyl", "build"]));
    assert!(second.contains("cache: loaded"));
}

#[test]
fn census_of_sigma96() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&e6(dir.path(), &["weyl", "census", "--ref", "96", "--orders", "2"]));
    assert!(out.starts_with("order 2: 139 elements commute with s96"));
    assert!(out.contains("class s96: 13"));
}

#[test]
fn q14_spec_grades_as_z4_cubed() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec("q14.json");
    let out = e6(dir.path(), &["grade", "--spec", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: GradingReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.grading_type, "(48,15)/0");
    assert_eq!(report.universal_group.as_deref(), Some("Z4^3"));
    assert_eq!(report.components.iter().map(|c| c.dim).sum::<usize>(), 78);
}

#[test]
fn csv_and_markdown_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec("adams-q1.json");
    let csv = stdout(&e6(dir.path(), &["grade", "--spec", path.to_str().unwrap(), "--format", "csv"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("degree,dim"));
    assert_eq!(lines.count(), 74);
    let md = stdout(&e6(dir.path(), &["grade", "--spec", path.to_str().unwrap(), "--format", "md"]));
    assert!(md.contains("- type: (72,0,2)/0"));
    assert!(md.contains("- universal group: Z3^4"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(e6(dir.path(), &["weyl", "stab", "nonsense"]).status.code(), Some(3));
    assert_eq!(e6(dir.path(), &["algebra", "build", "g2"]).status.code(), Some(3));

    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"model":"f4"}"#).unwrap();
    assert_eq!(e6(dir.path(), &["grade", "--spec", unknown.to_str().unwrap()]).status.code(), Some(3));

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, r#"{"model":"q14","automorphisms":"U1"#).unwrap();
    assert_eq!(e6(dir.path(), &["grade", "--spec", malformed.to_str().unwrap()]).status.code(), Some(4));

    let missing = dir.path().join("missing.json");
    assert_eq!(e6(dir.path(), &["grade", "--spec", missing.to_str().unwrap()]).status.code(), Some(6));

    assert_eq!(e6(dir.path(), &["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn stale_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert!(e6(dir.path(), &["weyl", "build"]).status.success());
    let file = dir.path().join(e6tools::cache::CACHE_FILE);
    let mut bytes = std::fs::read(&file).unwrap();
    bytes[12] ^= 1;
    std::fs::write(&file, bytes).unwrap();
    let out = e6(dir.path(), &["weyl", "build"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weyl-e6.bin"));
}

#[test]
fn tables_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let serial = e6(dir.path(), &["verify", "tables", "--format", "json", "--jobs", "1", "--report", report.to_str().unwrap()]);
    assert!(serial.status.success());
    let parallel = e6(dir.path(), &["verify", "tables", "--format", "json", "--jobs", "4"]);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(std::fs::read(&report).unwrap(), serial.stdout);
    let parsed: VerificationReport = serde_json::from_slice(&serial.stdout).unwrap();
    assert_eq!(parsed.summary.failed, 0);
    assert!(parsed.checks.iter().all(|c| c.runtime_ms.is_none()));
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let out = e6(dir.path(), &["verify", "tables", "--format", "json", "--timings"]);
    let parsed: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(parsed.checks.iter().all(|c| c.runtime_ms.is_some()));
}

#[test]
fn failing_suite_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = e6(dir.path(), &["verify", "counts"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL  census.sigma96.involutions"));
}
