use std::process::Command;

use invariant_heat::harness::{
    convergence_study, emit, invariance_suite, least_squares_slope, linearity_test_with, render, to_json,
    ConvergenceReport, InvarianceReport, OutputFormat, Report, CONVERGENCE_CSV_HEADER,
};
use invariant_heat::{FourierIC, ProjectionMethod, RunConfig};

fn small_study() -> ConvergenceReport {
    let cfg = RunConfig::invariant(4, Some(ProjectionMethod::InvariantQuadratic));
    convergence_study(&cfg, &[8, 16, 32]).unwrap()
}

#[test]
fn slope_of_exact_power_law() {
    let pts: Vec<(f64, f64)> = [1.0f64, 0.5, 0.25, 0.125].iter().map(|&h| (h.ln(), (3.0 * h * h).ln())).collect();
    assert!((least_squares_slope(&pts) - 2.0).abs() < 1e-12);
}

#[test]
fn csv_has_one_row_per_n() {
    let report = small_study();
    let csv = report.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CONVERGENCE_CSV_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("8,"));
    // the coarsest row has no pairwise order
    assert!(lines[1].ends_with(','));
    assert_eq!(lines[3].split(',').count(), 6);
}

#[test]
fn json_round_trips_bit_exactly() {
    let report = small_study();
    let back: ConvergenceReport = serde_json::from_str(&to_json(&report)).unwrap();
    assert_eq!(back, report);
    let suite = invariance_suite(50, 9).unwrap();
    let back: InvarianceReport = serde_json::from_str(&render(&suite, OutputFormat::Json)).unwrap();
    assert_eq!(back, suite);
}

#[test]
fn emit_writes_the_rendered_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite.csv");
    let suite = invariance_suite(20, 1).unwrap();
    emit(&suite, OutputFormat::Csv, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), suite.to_csv());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn suite_is_deterministic_per_seed() {
    let a = invariance_suite(200, 42).unwrap();
    let b = invariance_suite(200, 42).unwrap();
    assert_eq!(a, b);
    assert!(a.passed);
    let c = invariance_suite(200, 43).unwrap();
    assert_ne!(a.categories, c.categories);
}

#[test]
fn linearity_is_symmetric_in_its_inputs() {
    let cfg = RunConfig::invariant(4, Some(ProjectionMethod::InvariantQuadratic));
    let (a, b) = (FourierIC::shifted_sine(), FourierIC::cosine());
    let ab = linearity_test_with(&[8, 16], &cfg, &a, &b).unwrap();
    let ba = linearity_test_with(&[8, 16], &cfg, &b, &a).unwrap();
    for (r, s) in ab.rows.iter().zip(&ba.rows) {
        let (p, q) = (r.linf_error.unwrap(), s.linf_error.unwrap());
        assert!((p - q).abs() <= 1e-13 * p.max(q), "{p} vs {q}");
    }
}

#[test]
fn constants_superpose_exactly() {
    let cfg = RunConfig::invariant(4, Some(ProjectionMethod::InvariantQuadratic));
    let report =
        linearity_test_with(&[8, 16], &cfg, &FourierIC::constant(2.0), &FourierIC::constant(3.0)).unwrap();
    for r in &report.rows {
        assert!(r.linf_error.unwrap() < 1e-13);
    }
}

#[test]
fn linearity_without_projection_is_rejected() {
    let cfg = RunConfig::invariant(4, None);
    assert!(linearity_test_with(&[8, 16], &cfg, &FourierIC::constant(2.0), &FourierIC::constant(3.0)).is_err());
}

#[test]
fn studies_reject_tiny_meshes() {
    assert!(convergence_study(&RunConfig::invariant(4, None), &[2, 4]).is_err());
}

fn invheat(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_invheat")).args(args).output().unwrap()
}

#[test]
fn cli_run_prints_nodal_csv() {
    let out = invheat(&["run", "--N", "8", "--projection", "invariant_quadratic"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,u,exact");
    assert_eq!(lines.len(), 9);
}

#[test]
fn cli_converge_reports_slope_window_in_exit_code() {
    let ok = invheat(&["converge", "--Ns", "32,64,128", "--projection", "quadratic", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let report: ConvergenceReport = serde_json::from_slice(&ok.stdout).unwrap();
    assert!(report.slope_within_window);
    // linear projection is only first order
    let bad = invheat(&["converge", "--Ns", "32,64,128", "--projection", "linear"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cli_invariance_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.json");
    let out = invheat(&["invariance", "--trials", "100", "--seed", "7", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: InvarianceReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((report.trials, report.seed), (100, 7));
}

#[test]
fn cli_rejects_bad_input() {
    assert_eq!(invheat(&["run", "--N", "8", "--ic", "tan:k=1"]).status.code(), Some(1));
    assert!(!invheat(&["run", "--scheme", "euler"]).status.success());
}
