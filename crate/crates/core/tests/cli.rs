use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_vekua");

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("VEKUA_THREADS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn rows(path: &Path) -> Vec<[f64; 4]> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap();
    r.deserialize().map(|row| row.unwrap()).collect()
}

#[test]
fn solve_first_order_with_unit_source() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("p.json"),
        r#"{"problem": {"order": 1, "f": {"kind": "monomial", "a": 0, "b": 0},
                        "boundary_data": [{"kind": "atomic", "terms": []}]},
            "trace": {"radii": [0.3, 0.7], "n_theta": 12, "kernel": "t"}}"#,
    )
    .unwrap();
    let out = run(&["solve", "--config", "p.json", "--out", "o"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("o/trace.csv")).unwrap();
    assert!(csv.lines().next().unwrap().starts_with('#') && csv.contains("config_digest="));
    let trace = rows(&dir.path().join("o/trace.csv"));
    assert_eq!(trace.len(), 24);
    // w = z̄ - z
    for [r, t, re, im] in trace {
        assert!(
            re.abs() < 1e-6 && (im + 2.0 * r * t.sin()).abs() < 1e-6,
            "{r} {t} {re} {im}"
        );
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("o/solution.json")).unwrap())
            .unwrap();
    assert!(manifest.is_object());
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    fs::write(dir.path().join("extra.json"), r#"{"colour": "blue"}"#).unwrap();
    assert_eq!(
        code(&run(&["verify", "--config", "bad.json"], dir.path())),
        2
    );
    assert_eq!(
        code(&run(&["verify", "--config", "extra.json"], dir.path())),
        2
    );
    assert_eq!(
        code(&run(&["verify", "--config", "missing.json"], dir.path())),
        2
    );
    assert_eq!(code(&run(&["verify", "--suite", "nope"], dir.path())), 2);
    assert_eq!(
        code(&run(
            &["verify", "--suite", "hilbert", "--resolution", "-1"],
            dir.path()
        )),
        2
    );
    assert_eq!(code(&run(&["frobnicate"], dir.path())), 2);
}

#[test]
fn thread_cap_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["verify", "--suite", "hilbert"])
        .current_dir(dir.path())
        .env("VEKUA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(BIN)
        .args(["verify", "--suite", "hilbert"])
        .current_dir(dir.path())
        .env("VEKUA_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_reports_pass_lines_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--suite", "hilbert", "--seed", "3"], dir.path());
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().any(|l| l.starts_with("PASS")));
    assert!(!stdout.lines().any(|l| l.starts_with("FAIL")));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(report.is_object());
}

#[test]
fn verify_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.json"), r#"{"tolerance": 0.0}"#).unwrap();
    let out = run(
        &["verify", "--suite", "hilbert", "--config", "t.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .any(|l| l.starts_with("FAIL")));
}

#[test]
fn numerical_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    // Nineteen vanishing moments cannot be verified in double precision.
    fs::write(
        dir.path().join("a.json"),
        r#"{"atoms": [{"kind": "moment", "p": 0.05, "center": 0.0, "length": 1.0}]}"#,
    )
    .unwrap();
    let out = run(&["atoms", "--config", "a.json"], dir.path());
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}
