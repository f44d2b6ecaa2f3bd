use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lowdin_kit::AnalysisReport;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_lowdin-kit");

const SIXTY_DEGREES: &str = r#"{"ambient_dim": 2, "vectors": [[[1,0],[0,0]], [[0.5,0],[0.8660254037844386,0]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> AnalysisReport {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_error(out: &Output, code: i32, kind: &str) {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
    let line: serde_json::Value = serde_json::from_str(stderr.trim_end()).unwrap();
    assert_eq!(line["error"], kind);
    assert_eq!(line["exit_code"], code);
}

#[test]
fn lowdin_symmetric_distortion() {
    let dir = TempDir::new().unwrap();
    let basis = file(&dir, "basis.json", SIXTY_DEGREES);
    let r = report(&run(&["orthogonalize", "--basis", s(&basis), "--method", "lowdin-sym"]));
    assert!((r.distortion.unwrap().frobenius - 0.369).abs() < 1e-2);
    assert_eq!(r.basis.as_ref().unwrap().len(), 2);
}

#[test]
fn orthonormal_input_has_zero_distortion() {
    let dir = TempDir::new().unwrap();
    let basis = file(&dir, "basis.json", r#"{"ambient_dim": 2, "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]}"#);
    for method in ["gram-schmidt", "lowdin-sym", "lowdin-can"] {
        let r = report(&run(&["orthogonalize", "--basis", s(&basis), "--method", method]));
        assert!(r.distortion.unwrap().frobenius < 1e-12, "{method}");
    }
}

#[test]
fn gram_schmidt_orders_give_distinct_bases() {
    let dir = TempDir::new().unwrap();
    let basis = file(&dir, "basis.json", SIXTY_DEGREES);
    let a = report(&run(&["orthogonalize", "--basis", s(&basis), "--method", "gram-schmidt", "--order", "1,2"]));
    let b = report(&run(&["orthogonalize", "--basis", s(&basis), "--method", "gram-schmidt", "--order", "2,1"]));
    assert_ne!(a.basis, b.basis);
    assert_eq!(b.order, Some(vec![2, 1]));
}

#[test]
fn report_written_to_out_file() {
    let dir = TempDir::new().unwrap();
    let basis = file(&dir, "basis.json", SIXTY_DEGREES);
    let out = dir.path().join("report.json");
    let o = run(&["orthogonalize", "--basis", s(&basis), "--method", "lowdin-can", "--out", s(&out)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: AnalysisReport = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r.method.as_deref(), Some("lowdin-can"));
}

#[test]
fn beta_state_weights() {
    let dir = TempDir::new().unwrap();
    let state = file(&dir, "state.json", r#"{"gram": {"dim": 2, "overlaps": [[1, 2, 0.4]]}, "pure": [[1,0],[0.6,0]]}"#);
    let r = report(&run(&["weights", "--state", s(&state)]));
    let w = r.weights.unwrap();
    assert!((w[0] - 0.66).abs() < 1e-2 && (w[1] - 0.34).abs() < 1e-2);
    assert!((r.measures.unwrap().entropy - 0.925).abs() < 2e-3);
}

#[test]
fn maximally_mixed_weights_and_decomposition() {
    let dir = TempDir::new().unwrap();
    let state = file(
        &dir,
        "state.json",
        r#"{"gram": {"dim": 2, "overlaps": [[1, 2, 0.5]]}, "rho": [[[0.5,0],[0,0]], [[0,0],[0.5,0]]]}"#,
    );
    let r = report(&run(&["weights", "--state", s(&state)]));
    let w = r.weights.unwrap();
    assert!((w[0] - 0.5).abs() < 1e-9 && (w[1] - 0.5).abs() < 1e-9);
    let split = r.offdiagonal.unwrap();
    assert!((split.artifact[0][1][0] - 0.25).abs() < 1e-9);
    assert!(split.genuine[0][1][0].abs() < 1e-9);
    assert!(r.rho_l.is_some());
}

#[test]
fn orthonormal_localized_state() {
    let dir = TempDir::new().unwrap();
    let state = file(&dir, "state.json", r#"{"gram": {"dim": 2, "overlaps": []}, "pure": [[1,0],[0,0]]}"#);
    let r = report(&run(&["weights", "--state", s(&state)]));
    assert_eq!(r.weights.unwrap(), vec![1.0, 0.0]);
    assert_eq!(r.measures.unwrap().entropy, 0.0);
}

#[test]
fn sweep_matches_reference_points() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "spec.json", r#"{"parameter": "s", "range": [0.1, 0.4], "steps": 2, "fixed": {"gamma": 0.6}}"#);
    let csv = dir.path().join("out.csv");
    let o = run(&["sweep", "--spec", s(&spec), "--out", s(&csv)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,w_1,w_2,entropy,pr,ipr"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2);
    assert!((rows[0][1] - 0.715).abs() < 1e-2 && (rows[0][3] - 0.862).abs() < 2e-3);
    assert!((rows[1][1] - 0.66).abs() < 1e-2 && (rows[1][3] - 0.925).abs() < 2e-3);
}

#[test]
fn sweep_p_column_equals_w1_without_coherence() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "spec.json", r#"{"parameter": "p", "range": [0, 1], "steps": 5, "fixed": {"q": 0, "s": 0}}"#);
    let csv = dir.path().join("out.csv");
    assert!(run(&["sweep", "--spec", s(&spec), "--out", s(&csv)]).status.success());
    for line in fs::read_to_string(&csv).unwrap().lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[0] - v[1]).abs() < 1e-12, "{line}");
    }
}

#[test]
fn sweep_uses_output_field_without_out_flag() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("from-spec.csv");
    let body = format!(
        r#"{{"parameter": "gamma", "range": [0, 1], "steps": 3, "fixed": {{"s": 0.2}}, "output": {}}}"#,
        serde_json::to_string(s(&csv)).unwrap()
    );
    let spec = file(&dir, "spec.json", &body);
    assert!(run(&["sweep", "--spec", s(&spec)]).status.success());
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 4);
}

#[test]
fn degenerate_sweep_range_rejected() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "spec.json", r#"{"parameter": "s", "range": [0, 0], "steps": 2, "fixed": {"gamma": 0.6}}"#);
    let csv = dir.path().join("out.csv");
    assert_error(&run(&["sweep", "--spec", s(&spec), "--out", s(&csv)]), 2, "InvalidSweep");
    assert!(!csv.exists());
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let garbage = file(&dir, "bad.json", "{ not json");
    assert_error(&run(&["orthogonalize", "--basis", s(&garbage), "--method", "lowdin-sym"]), 2, "ParseError");
    let extra = file(&dir, "extra.json", r#"{"ambient_dim": 2, "vectors": [], "colour": 1}"#);
    assert_error(&run(&["orthogonalize", "--basis", s(&extra), "--method", "lowdin-sym"]), 2, "ParseError");
    let empty = file(&dir, "empty.json", r#"{"ambient_dim": 2, "vectors": []}"#);
    assert_error(&run(&["orthogonalize", "--basis", s(&empty), "--method", "lowdin-sym"]), 2, "SchemaError");
    let basis = file(&dir, "basis.json", SIXTY_DEGREES);
    assert_error(&run(&["orthogonalize", "--basis", s(&basis), "--method", "qr"]), 2, "InvalidMethod");
    assert_error(
        &run(&["orthogonalize", "--basis", s(&basis), "--method", "gram-schmidt", "--order", "0,1"]),
        2,
        "InvalidOrder",
    );
    assert_error(
        &run(&["orthogonalize", "--basis", s(&basis), "--method", "lowdin-sym", "--order", "2,1"]),
        2,
        "InvalidOrder",
    );
    assert_error(&run(&["weights", "--state", "/definitely/missing.json"]), 2, "IoError");
    assert_error(&run(&["weights"]), 2, "UsageError");
}

#[test]
fn math_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let dependent = file(&dir, "basis.json", r#"{"ambient_dim": 2, "vectors": [[[1,0],[0,0]], [[1,0],[0,0]]]}"#);
    assert_error(
        &run(&["orthogonalize", "--basis", s(&dependent), "--method", "lowdin-sym"]),
        3,
        "LinearlyDependent",
    );
    let unnormalized = file(&dir, "basis2.json", r#"{"ambient_dim": 2, "vectors": [[[2,0],[0,0]], [[0,0],[1,0]]]}"#);
    assert_error(
        &run(&["orthogonalize", "--basis", s(&unnormalized), "--method", "gram-schmidt"]),
        3,
        "NotNormalized",
    );
    let bad_trace = file(
        &dir,
        "state.json",
        r#"{"gram": {"dim": 2, "overlaps": [[1, 2, 0.5]]}, "rho": [[[0.7,0],[0,0]], [[0,0],[0.7,0]]]}"#,
    );
    assert_error(&run(&["weights", "--state", s(&bad_trace)]), 3, "InvalidDensity");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let basis = file(&dir, "basis.json", SIXTY_DEGREES);
    let state = file(
        &dir,
        "state.json",
        r#"{"gram": {"dim": 2, "overlaps": [[1, 2, 0.5]]}, "rho": [[[0.6,0],[0.2,0]], [[0.2,0],[0.4,0]]]}"#,
    );
    let spec = file(&dir, "spec.json", r#"{"parameter": "q", "range": [-0.2, 0.2], "steps": 7, "fixed": {"p": 0.6, "s": 0.5}}"#);
    let a = run(&["orthogonalize", "--basis", s(&basis), "--method", "lowdin-sym"]);
    let b = run(&["orthogonalize", "--basis", s(&basis), "--method", "lowdin-sym"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["weights", "--state", s(&state)]);
    let b = run(&["weights", "--state", s(&state)]);
    assert_eq!(a.stdout, b.stdout);
    let (c1, c2) = (dir.path().join("1.csv"), dir.path().join("2.csv"));
    assert!(run(&["sweep", "--spec", s(&spec), "--out", s(&c1)]).status.success());
    assert!(run(&["sweep", "--spec", s(&spec), "--out", s(&c2)]).status.success());
    assert_eq!(fs::read(c1).unwrap(), fs::read(c2).unwrap());
}

#[test]
fn report_reparses_to_identical_json() {
    let dir = TempDir::new().unwrap();
    let basis = file(&dir, "basis.json", SIXTY_DEGREES);
    let out = run(&["orthogonalize", "--basis", s(&basis), "--method", "gram-schmidt", "--order", "2,1"]);
    let r = report(&out);
    assert_eq!(r.to_json().as_bytes(), out.stdout.as_slice());
}

#[test]
fn paper_check_passes() {
    let out = run(&["paper-check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.ends_with("PASS")).count() >= 15);
    assert!(!text.contains("FAIL"));
}
