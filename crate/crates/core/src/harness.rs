//! Experiment suites behind the `invheat` CLI: convergence studies, the
//! superposition (linearity) test, the randomized invariance suite, and
//! CSV/JSON output.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::driver::{exact_solution, linf_error, run, FourierIC, RunConfig, RunResult};
use crate::error::{Error, Result};
use crate::frame::canonical_form;
use crate::group::{default_lie_step, generator_flow, lie_derivative, GroupElement};
use crate::mesh::{grid_residual_dorodnitsyn, grid_residual_invariantized, grid_residual_scale};
use crate::schemes::{
    invariant_ftcs_terms, invariant_leapfrog_terms, residual_ftcs, residual_invariant_ftcs,
};
use crate::stencil::{PrevLevel, Stencil};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Acceptance window for fitted convergence slopes.
pub const ORDER_WINDOW: (f64, f64) = (1.75, 2.25);

/// Environment variable selecting the number of worker threads for studies.
pub const THREADS_ENV: &str = "INVHEAT_THREADS";

/// Default refinement sequence; rows with `N <= 16` fall outside the fit.
pub const DEFAULT_NS: [usize; 7] = [4, 8, 16, 32, 64, 128, 256];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
    pub dtau: f64,
    pub steps: usize,
    pub linf_error: Option<f64>,
    /// `ln(E_prev / E) / ln(N / N_prev)` against the previous row.
    pub pairwise_order: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub study: String,
    pub version: String,
    pub config: RunConfig,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln E` against `ln h` over the successful rows
    /// among the finest half of the sweep.
    pub fitted_slope: Option<f64>,
    /// Rows that entered the fit.
    pub fit_ns: Vec<usize>,
    pub order_window: (f64, f64),
    pub slope_within_window: bool,
}

impl ConvergenceReport {
    fn assemble(study: &str, config: RunConfig, mut rows: Vec<ConvergenceRow>) -> Self {
        rows.sort_by_key(|r| r.n);
        for i in 1..rows.len() {
            let (prev, cur) = (&rows[i - 1], &rows[i]);
            rows[i].pairwise_order = match (prev.linf_error, cur.linf_error) {
                (Some(a), Some(b)) if a > 0.0 && b > 0.0 => {
                    Some((a / b).ln() / (cur.n as f64 / prev.n as f64).ln())
                }
                _ => None,
            };
        }
        let fit_rows = &rows[rows.len() - rows.len().div_ceil(2)..];
        let usable: Vec<&ConvergenceRow> =
            fit_rows.iter().filter(|r| r.linf_error.is_some_and(|e| e > 0.0)).collect();
        let fitted_slope = if usable.len() >= 2 {
            let pts: Vec<(f64, f64)> =
                usable.iter().map(|r| (r.h.ln(), r.linf_error.unwrap().ln())).collect();
            Some(least_squares_slope(&pts))
        } else {
            None
        };
        // a failed or exact row in the fit set voids the window check
        let slope_within_window = usable.len() == fit_rows.len()
            && fitted_slope.is_some_and(|s| s >= ORDER_WINDOW.0 && s <= ORDER_WINDOW.1);
        Self {
            study: study.to_string(),
            version: VERSION.to_string(),
            config,
            fit_ns: usable.iter().map(|r| r.n).collect(),
            rows,
            fitted_slope,
            order_window: ORDER_WINDOW,
            slope_within_window,
        }
    }

    pub fn any_failure(&self) -> bool {
        self.rows.iter().any(|r| r.failure.is_some())
    }
}

/// Slope of the least-squares line through `(x, y)` points.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn thread_count() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&t| t >= 1).unwrap_or(1)
}

/// Maps `f` over `items`, in parallel when more than one thread is
/// configured. Output order matches input order.
fn map_ns<T, F>(ns: &[usize], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_count().min(ns.len().max(1));
    if threads <= 1 {
        return ns.iter().map(|&n| f(n)).collect();
    }
    let chunk = ns.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(|&n| f(n)).collect::<Vec<T>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn check_ns(ns: &[usize]) -> Result<()> {
    if let Some(&n) = ns.iter().find(|&&n| n < 4) {
        return Err(Error::InvalidConfig(format!("N = {n} is unsupported, studies need N >= 4")));
    }
    Ok(())
}

fn row_from(cfg: &RunConfig, result: &RunResult, error: Option<f64>) -> ConvergenceRow {
    ConvergenceRow {
        n: cfg.n,
        h: cfg.h(),
        dtau: result.dtau,
        steps: result.steps,
        linf_error: if result.succeeded() { error } else { None },
        pairwise_order: None,
        failure: result.failure.as_ref().map(|f| f.message.clone()),
    }
}

/// One run per `N` with `base` otherwise unchanged.
pub fn convergence_study(base: &RunConfig, ns: &[usize]) -> Result<ConvergenceReport> {
    check_ns(ns)?;
    base.validate()?;
    let rows = map_ns(ns, |n| {
        let cfg = RunConfig { n, ..base.clone() };
        let result = run(&cfg)?;
        let e = linf_error(&result, &cfg.ic);
        Ok(row_from(&cfg, &result, Some(e)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::assemble("convergence", base.clone(), rows))
}

/// Superposition test with `sin(x - 1) + 2` and `cos(x) + 2`.
pub fn linearity_test(ns: &[usize], template: &RunConfig) -> Result<ConvergenceReport> {
    linearity_test_with(ns, template, &FourierIC::shifted_sine(), &FourierIC::cosine())
}

/// Runs `a` and `b` separately and compares `u_a + u_b` with the exact
/// solution of `a + b` on the uniform lattice.
pub fn linearity_test_with(
    ns: &[usize],
    template: &RunConfig,
    a: &FourierIC,
    b: &FourierIC,
) -> Result<ConvergenceReport> {
    check_ns(ns)?;
    if template.projection.is_none() {
        return Err(Error::InvalidConfig(
            "linearity test needs a projection so both runs end on the same lattice".into(),
        ));
    }
    let sum_ic = a.sum(b);
    let rows = map_ns(ns, |n| {
        let cfg_a = RunConfig { n, ic: a.clone(), ..template.clone() };
        let cfg_b = RunConfig { n, ic: b.clone(), ..template.clone() };
        let ra = run(&cfg_a)?;
        let rb = run(&cfg_b)?;
        let failed = if !ra.succeeded() { &ra } else { &rb };
        if !failed.succeeded() {
            return Ok(row_from(&cfg_a, failed, None));
        }
        let (sa, sb) = (&ra.final_state, &rb.final_state);
        let error = sa
            .x
            .iter()
            .zip(sa.u.iter().zip(&sb.u))
            .map(|(&x, (&ua, &ub))| (ua + ub - exact_solution(&sum_ic, x, sa.tau)).abs())
            .fold(0.0, f64::max);
        Ok(row_from(&cfg_a, &ra, Some(error)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let config = RunConfig { ic: sum_ic, ..template.clone() };
    Ok(ConvergenceReport::assemble("linearity", config, rows))
}

/// Whether a category passes when its statistic is below or above the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    Exceeds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryResult {
    pub name: String,
    pub description: String,
    pub max_violation: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub version: String,
    pub trials: usize,
    pub seed: u64,
    pub categories: Vec<CategoryResult>,
    pub passed: bool,
}

pub const ZERO_SET_TOLERANCE: f64 = 1e-9;
pub const CANONICAL_TOLERANCE: f64 = 1e-9;
pub const LIE_DERIVATIVE_TOLERANCE: f64 = 1e-6;
pub const NEGATIVE_CONTROL_THRESHOLD: f64 = 1e-3;
pub const NEGATIVE_CONTROL_BOOST: f64 = 0.5;

/// Group element with every parameter uniform in `[-1, 1]`.
pub fn random_group_element<R: Rng>(rng: &mut R) -> GroupElement {
    GroupElement::new(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

/// Random level-`n` data of a stencil; `u_i_np1` is left at 1.
pub fn random_stencil<R: Rng>(rng: &mut R) -> Stencil {
    let x_i = rng.random_range(-1.0..1.0);
    let dtau = rng.random_range(5e-3..2e-2);
    Stencil {
        tau_n: rng.random_range(0.0..1.0),
        dtau,
        x_im1: x_i - rng.random_range(0.1..0.4),
        x_i,
        x_ip1: x_i + rng.random_range(0.1..0.4),
        x_i_np1: x_i + rng.random_range(-0.05..0.05),
        u_im1: rng.random_range(0.5..2.0),
        u_i: rng.random_range(0.5..2.0),
        u_ip1: rng.random_range(0.5..2.0),
        u_i_np1: 1.0,
        prev: None,
    }
}

fn drift(z: &Stencil, velocity: f64) -> f64 {
    let l = z.log_slope();
    (z.dtau * (velocity * l + l * l)).exp()
}

fn invariant_space(z: &Stencil) -> f64 {
    invariant_ftcs_terms(z).map(|t| t.space).unwrap_or(f64::NAN)
}

/// Random stencil on the zero set of the invariant FTCS scheme. Redraws
/// until the explicit solve stays positive.
pub fn random_solved_stencil<R: Rng>(rng: &mut R) -> Stencil {
    loop {
        let mut z = random_stencil(rng);
        let base = z.u_i + z.dtau * invariant_space(&z);
        if base > 0.0 {
            z.u_i_np1 = drift(&z, z.grid_velocity()) * base;
            return z;
        }
    }
}

/// Random three-level stencil on the zero set of the invariant leapfrog scheme.
pub fn random_solved_leapfrog<R: Rng>(rng: &mut R) -> Stencil {
    loop {
        let mut z = random_stencil(rng);
        let prev = PrevLevel { x_i: z.x_i - rng.random_range(-0.05..0.05), u_i: rng.random_range(0.5..2.0) };
        z.prev = Some(prev);
        let back = (z.x_i - prev.x_i) / z.dtau;
        let base = drift(&z, back) * prev.u_i + 2.0 * z.dtau * invariant_space(&z);
        if base > 0.0 {
            z.u_i_np1 = drift(&z, z.grid_velocity()) * base;
            return z;
        }
    }
}

/// Random stencil whose discrete moving frame exists.
pub fn random_framed_stencil<R: Rng>(rng: &mut R) -> Stencil {
    let mut z = random_stencil(rng);
    let q = rng.random_range(0.2..3.0);
    z.u_i_np1 = drift(&z, z.grid_velocity()) * z.u_i * (1.0 + z.dtau * q);
    z
}

/// FTCS-solved stencil sampled from `c + a sin(x - phase)` on a stationary
/// uniform grid with `dtau = h^2 / 4`.
pub fn random_ftcs_stencil<R: Rng>(rng: &mut R) -> Stencil {
    let c = rng.random_range(2.0..3.0);
    let a = rng.random_range(0.5..1.0);
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let h = rng.random_range(0.1..0.5);
    let x_i = rng.random_range(0.0..std::f64::consts::TAU);
    let f = |x: f64| c + a * (x - phase).sin();
    let dtau = 0.25 * h * h;
    let mut z = Stencil {
        tau_n: rng.random_range(0.0..1.0),
        dtau,
        x_im1: x_i - h,
        x_i,
        x_ip1: x_i + h,
        x_i_np1: x_i,
        u_im1: f(x_i - h),
        u_i: f(x_i),
        u_ip1: f(x_i + h),
        u_i_np1: 1.0,
        prev: None,
    };
    z.u_i_np1 = z.u_i + dtau / (h * h) * (z.u_ip1 + z.u_im1 - 2.0 * z.u_i);
    z
}

fn relative_stencil_distance(a: &Stencil, b: &Stencil) -> f64 {
    let fields = |z: &Stencil| {
        [z.tau_n, z.dtau, z.x_im1, z.x_i, z.x_ip1, z.x_i_np1, z.u_im1, z.u_i, z.u_ip1, z.u_i_np1]
    };
    fields(a)
        .iter()
        .zip(fields(b))
        .map(|(p, q)| (p - q).abs() / p.abs().max(q.abs()).max(1.0))
        .fold(0.0, f64::max)
}

struct Tracker {
    worst: f64,
}

impl Tracker {
    fn new() -> Self {
        Self { worst: 0.0 }
    }

    /// NaN counts as an infinitely bad violation.
    fn push(&mut self, v: f64) {
        self.worst = if v.is_nan() { f64::INFINITY } else { self.worst.max(v) };
    }
}

/// Randomized checks of scheme, grid and frame invariance, with a
/// negative control on the non-invariant FTCS scheme.
pub fn invariance_suite(trials: usize, seed: u64) -> Result<InvarianceReport> {
    if trials == 0 {
        return Err(Error::InvalidConfig("invariance suite needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scheme = Tracker::new();
    let mut leapfrog = Tracker::new();
    let mut grid = Tracker::new();
    let mut dorodnitsyn = Tracker::new();
    let mut canonical = Tracker::new();
    let mut lie = Tracker::new();
    let mut control = Tracker::new();
    let boost = generator_flow(5, NEGATIVE_CONTROL_BOOST)?;
    let bad = f64::INFINITY;

    for _ in 0..trials {
        let g = random_group_element(&mut rng);

        let z = random_solved_stencil(&mut rng);
        let t = invariant_ftcs_terms(&g.apply_stencil(&z))?;
        scheme.push(t.value().abs() / t.scale());

        let scale = invariant_ftcs_terms(&z)?.scale();
        let step = default_lie_step(&z);
        for k in 1..=5 {
            let d = lie_derivative(residual_invariant_ftcs, k, &z, step)?;
            lie.push(d.abs() / scale);
        }

        let z = random_solved_leapfrog(&mut rng);
        let t = invariant_leapfrog_terms(&g.apply_stencil(&z))?;
        leapfrog.push(t.value().abs() / t.scale());

        let mut z = random_stencil(&mut rng);
        z.x_i_np1 = z.x_i - 2.0 * z.dtau * z.log_slope();
        let w = g.apply_stencil(&z);
        grid.push(grid_residual_invariantized(&w)?.abs() / grid_residual_scale(&w));

        let bracket = (z.h_plus() / z.h_minus()) * (z.u_im1 / z.u_i).ln()
            - (z.h_minus() / z.h_plus()) * (z.u_ip1 / z.u_i).ln();
        z.x_i_np1 = z.x_i + 2.0 * z.dtau / z.span() * bracket;
        let w = g.apply_stencil(&z);
        dorodnitsyn.push(grid_residual_dorodnitsyn(&w)?.abs() / grid_residual_scale(&w));

        let z = random_framed_stencil(&mut rng);
        let v = match (canonical_form(&z), canonical_form(&g.apply_stencil(&z))) {
            (Ok(a), Ok(b)) => relative_stencil_distance(&a, &b),
            _ => bad,
        };
        canonical.push(v);

        let z = random_ftcs_stencil(&mut rng);
        let r = residual_ftcs(&boost.apply_stencil(&z)).abs();
        control.worst = control.worst.max(r);
    }

    let at_most = |name: &str, description: &str, t: &Tracker, tolerance: f64| CategoryResult {
        name: name.into(),
        description: description.into(),
        max_violation: t.worst,
        tolerance,
        comparison: Comparison::AtMost,
        passed: t.worst <= tolerance,
    };
    let categories = vec![
        at_most(
            "scheme_zero_set",
            "|S(g.z)| / (|time term| + |space term|) for solved z",
            &scheme,
            ZERO_SET_TOLERANCE,
        ),
        at_most(
            "leapfrog_zero_set",
            "|leapfrog(g.z)| / (|time term| + |space term|) for solved z",
            &leapfrog,
            ZERO_SET_TOLERANCE,
        ),
        at_most(
            "grid_zero_set",
            "|M(g.z)| / max(|x_i^{n+1}|, |x_i^n|) for z with M(z) = 0",
            &grid,
            ZERO_SET_TOLERANCE,
        ),
        at_most(
            "dorodnitsyn_zero_set",
            "difference-invariant grid residual of g.z, relative",
            &dorodnitsyn,
            ZERO_SET_TOLERANCE,
        ),
        at_most(
            "canonical_form",
            "componentwise relative distance of canonical forms of z and g.z",
            &canonical,
            CANONICAL_TOLERANCE,
        ),
        at_most(
            "lie_derivative",
            "|pr v_k(S)| / (|time term| + |space term|) on S = 0, k = 1..5",
            &lie,
            LIE_DERIVATIVE_TOLERANCE,
        ),
        CategoryResult {
            name: "ftcs_negative_control".into(),
            description: "max |FTCS residual| after a Galilean boost eps5 = 0.5".into(),
            max_violation: control.worst,
            tolerance: NEGATIVE_CONTROL_THRESHOLD,
            comparison: Comparison::Exceeds,
            passed: control.worst > NEGATIVE_CONTROL_THRESHOLD,
        },
    ];
    let passed = categories.iter().all(|c| c.passed);
    Ok(InvarianceReport { version: VERSION.into(), trials, seed, categories, passed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

/// Anything the harness can write out.
pub trait Report: Serialize {
    fn to_csv(&self) -> String;
}

/// 17 significant digits.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_number(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

pub const CONVERGENCE_CSV_HEADER: &str = "N,h,dtau,steps,linf_error,pairwise_order";

impl Report for ConvergenceReport {
    fn to_csv(&self) -> String {
        let mut out = String::from(CONVERGENCE_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                format_number(r.h),
                format_number(r.dtau),
                r.steps,
                opt_number(r.linf_error),
                opt_number(r.pairwise_order)
            ));
        }
        out
    }
}

impl Report for InvarianceReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("category,max_violation,tolerance,comparison,passed\n");
        for c in &self.categories {
            let cmp = match c.comparison {
                Comparison::AtMost => "at_most",
                Comparison::Exceeds => "exceeds",
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.name,
                format_number(c.max_violation),
                format_number(c.tolerance),
                cmp,
                c.passed
            ));
        }
        out
    }
}

/// JSON formatter writing floats with 17 significant digits.
struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_number(value).as_bytes())
    }
}

pub fn to_json<R: Report>(report: &R) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits);
    report.serialize(&mut ser).expect("report serialization is infallible");
    let mut s = String::from_utf8(buf).expect("serde_json emits utf-8");
    s.push('\n');
    s
}

pub fn render<R: Report>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => to_json(report),
    }
}

/// Writes `report` to `path` via a temporary file and rename.
pub fn emit<R: Report>(report: &R, format: OutputFormat, path: &Path) -> Result<()> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    let mut tmp = PathBuf::from(path);
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    tmp.set_file_name(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, render(report, format)).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, e: Option<f64>) -> ConvergenceRow {
        ConvergenceRow {
            n,
            h: std::f64::consts::TAU / n as f64,
            dtau: 0.1,
            steps: 10,
            linf_error: e,
            pairwise_order: None,
            failure: None,
        }
    }

    #[test]
    fn assemble_orders_and_fit() {
        let rows = vec![row(16, Some(4.0)), row(8, Some(16.0)), row(32, Some(1.0)), row(64, Some(0.25))];
        let r = ConvergenceReport::assemble("t", RunConfig::invariant(8, None), rows);
        assert_eq!(r.rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![8, 16, 32, 64]);
        assert_eq!(r.rows[0].pairwise_order, None);
        for row in &r.rows[1..] {
            assert!((row.pairwise_order.unwrap() - 2.0).abs() < 1e-12);
        }
        assert_eq!(r.fit_ns, vec![32, 64]);
        assert!((r.fitted_slope.unwrap() - 2.0).abs() < 1e-12);
        assert!(r.slope_within_window);
    }

    #[test]
    fn failed_rows_void_the_fit() {
        let mut failed = row(64, None);
        failed.failure = Some("positivity lost".into());
        let rows = vec![row(8, Some(16.0)), row(16, Some(4.0)), row(32, Some(1.0)), failed];
        let r = ConvergenceReport::assemble("t", RunConfig::invariant(8, None), rows);
        assert_eq!(r.fit_ns, vec![32]);
        assert_eq!(r.fitted_slope, None);
        assert!(!r.slope_within_window);
        assert!(r.any_failure());
        assert_eq!(r.rows[3].pairwise_order, None);
    }

    #[test]
    fn csv_layout() {
        let r = ConvergenceReport::assemble("t", RunConfig::invariant(8, None), vec![]);
        assert_eq!(r.to_csv(), "N,h,dtau,steps,linf_error,pairwise_order\n");
        let r = ConvergenceReport::assemble("t", RunConfig::invariant(8, None), vec![row(8, Some(0.5))]);
        let csv = r.to_csv();
        let line = csv.lines().nth(1).unwrap();
        assert!(line.starts_with("8,7.8539816339744828e-1,1.0000000000000001e-1,10,5.0000000000000000e-1,"));
        assert!(csv.ends_with('\n') && !csv.ends_with("\n\n"));
    }

    #[test]
    fn studies_reject_tiny_meshes() {
        assert!(convergence_study(&RunConfig::invariant(8, None), &[2, 8]).is_err());
        let t = RunConfig::invariant(8, None);
        assert!(linearity_test(&[8], &t).is_err());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(invariance_suite(0, 1).is_err());
    }
}
