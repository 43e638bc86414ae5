//! Time stepping on a periodic domain, either on the moving mesh or with a
//! projection back to the uniform lattice after each step. Also holds the
//! Fourier initial conditions, their exact solutions and the error norms.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interpolation::{project, ProjectionMethod};
use crate::mesh::{grid_step, uniform_lattice, GridKind, MeshState};
use crate::schemes::{step_ftcs, step_invariant_ftcs, step_invariant_leapfrog, SchemeKind};

/// Domain length of every run.
pub const PERIOD: f64 = 2.0 * PI;

/// Number of samples used to check that an initial condition is positive.
pub const POSITIVITY_SAMPLES: usize = 10_000;

/// `amplitude * sin(k (x - shift))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: u32,
    pub amplitude: f64,
    pub shift: f64,
}

/// Initial condition `constant + sum amplitude * sin(k (x - shift))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierIC {
    pub constant: f64,
    pub modes: Vec<Mode>,
}

impl FourierIC {
    pub fn constant(c: f64) -> Self {
        Self { constant: c, modes: Vec::new() }
    }

    /// `sin(x - 1) + 2`.
    pub fn shifted_sine() -> Self {
        Self { constant: 2.0, modes: vec![Mode { k: 1, amplitude: 1.0, shift: 1.0 }] }
    }

    /// `cos(x) + 2`, written as `sin(x + pi/2) + 2`.
    pub fn cosine() -> Self {
        Self { constant: 2.0, modes: vec![Mode { k: 1, amplitude: 1.0, shift: -FRAC_PI_2 }] }
    }

    /// Pointwise sum of two initial conditions.
    pub fn sum(&self, other: &FourierIC) -> FourierIC {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        FourierIC { constant: self.constant + other.constant, modes }
    }

    pub fn eval(&self, x: f64) -> f64 {
        exact_solution(self, x, 0.0)
    }

    /// Checks integer wavenumbers and strict positivity on a dense sample.
    pub fn validate(&self) -> Result<()> {
        if !self.constant.is_finite() || self.constant < 0.0 {
            return Err(Error::InvalidConfig(format!("IC constant {} must be >= 0", self.constant)));
        }
        for m in &self.modes {
            if m.k == 0 || !m.amplitude.is_finite() || !m.shift.is_finite() {
                return Err(Error::InvalidConfig(format!("invalid IC mode {m:?}")));
            }
        }
        let min = (0..POSITIVITY_SAMPLES)
            .map(|i| self.eval(PERIOD * i as f64 / POSITIVITY_SAMPLES as f64))
            .fold(f64::INFINITY, f64::min);
        if !(min > 0.0) {
            return Err(Error::InvalidConfig(format!("IC is not positive (sampled minimum {min})")));
        }
        Ok(())
    }
}

impl fmt::Display for FourierIC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "const:{}", self.constant)?;
        for m in &self.modes {
            write!(f, "+sin:k={},amp={},shift={}", m.k, m.amplitude, m.shift)?;
        }
        Ok(())
    }
}

/// Parses `const:2+sin:k=1,shift=1+cos:k=2,amp=0.5`.
///
/// `sin` and `cos` terms take `k` (default 1), `amp` (default 1) and
/// `shift` (default 0); `cos:k,shift` is stored as a sine with its shift
/// moved by `-pi/(2k)`.
impl FromStr for FourierIC {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParseInitialCondition { input: s.to_string(), reason };
        let mut ic = FourierIC::constant(0.0);
        for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (kind, args) = term.split_once(':').unwrap_or(("const", term));
            match kind {
                "const" => {
                    ic.constant +=
                        args.parse::<f64>().map_err(|e| fail(format!("constant {args:?}: {e}")))?;
                }
                "sin" | "cos" => {
                    let (mut k, mut amplitude, mut shift) = (1u32, 1.0, 0.0);
                    for kv in args.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                        let (key, value) =
                            kv.split_once('=').ok_or_else(|| fail(format!("expected key=value, got {kv:?}")))?;
                        let bad = |e: &dyn fmt::Display| fail(format!("{key}={value}: {e}"));
                        match key {
                            "k" => k = value.parse().map_err(|e| bad(&e))?,
                            "amp" => amplitude = value.parse().map_err(|e| bad(&e))?,
                            "shift" => shift = value.parse().map_err(|e| bad(&e))?,
                            _ => return Err(fail(format!("unknown key {key:?}"))),
                        }
                    }
                    if k == 0 {
                        return Err(fail("wavenumber must be positive".into()));
                    }
                    if kind == "cos" {
                        shift -= FRAC_PI_2 / k as f64;
                    }
                    ic.modes.push(Mode { k, amplitude, shift });
                }
                other => return Err(fail(format!("unknown term {other:?}"))),
            }
        }
        Ok(ic)
    }
}

/// Exact periodic solution of `u_t = u_xx`: each mode decays as `e^{-k^2 t}`.
pub fn exact_solution(ic: &FourierIC, x: f64, t: f64) -> f64 {
    ic.constant
        + ic.modes
            .iter()
            .map(|m| {
                let k = m.k as f64;
                m.amplitude * (-k * k * t).exp() * (k * (x - m.shift)).sin()
            })
            .sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub scheme: SchemeKind,
    pub grid: GridKind,
    /// `None` evolves on the moving mesh without projecting back.
    pub projection: Option<ProjectionMethod>,
    /// `dtau = sigma * h^2` before the final-time adjustment.
    pub sigma: f64,
    pub t_final: f64,
    pub ic: FourierIC,
}

impl RunConfig {
    /// Invariant FTCS on the invariantized grid, `sin(x - 1) + 2`,
    /// `sigma = 0.25`, `t_final = 1`.
    pub fn invariant(n: usize, projection: Option<ProjectionMethod>) -> Self {
        Self {
            n,
            scheme: SchemeKind::InvariantFtcs,
            grid: GridKind::Invariantized,
            projection,
            sigma: 0.25,
            t_final: 1.0,
            ic: FourierIC::shifted_sine(),
        }
    }

    pub fn h(&self) -> f64 {
        PERIOD / self.n as f64
    }

    /// Step count and uniform step size that land exactly on `t_final`.
    pub fn time_steps(&self) -> (usize, f64) {
        let h = self.h();
        let nominal = self.sigma * h * h;
        let steps = ((self.t_final / nominal).ceil() as usize).max(1);
        (steps, self.t_final / steps as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidConfig(format!("N = {} is unsupported, need N >= 3", self.n)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!("sigma = {} must be positive", self.sigma)));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidConfig(format!("t_final = {} must be positive", self.t_final)));
        }
        self.ic.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    PositivityLost,
    MeshTangled,
    Domain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    /// Index of the step that failed (0-based).
    pub step: usize,
    pub kind: FailureKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    /// Last state reached; at `t_final` on success.
    pub final_state: MeshState,
    pub steps: usize,
    pub dtau: f64,
    pub wall_time_s: f64,
    pub failure: Option<RunFailure>,
}

impl RunResult {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

/// Step-by-step driver; [`run`] drives it to the final time.
#[derive(Debug, Clone)]
pub struct Simulation {
    cfg: RunConfig,
    lattice: Vec<f64>,
    level: MeshState,
    previous: Option<MeshState>,
    dtau: f64,
    total_steps: usize,
    taken: usize,
}

impl Simulation {
    pub fn new(cfg: RunConfig) -> Result<Self> {
        cfg.validate()?;
        let (total_steps, dtau) = cfg.time_steps();
        let level = MeshState::uniform(cfg.n, PERIOD, 0.0, |x| cfg.ic.eval(x));
        Ok(Self {
            lattice: uniform_lattice(cfg.n, PERIOD),
            cfg,
            level,
            previous: None,
            dtau,
            total_steps,
            taken: 0,
        })
    }

    pub fn state(&self) -> &MeshState {
        &self.level
    }

    pub fn config(&self) -> &RunConfig {
        &self.cfg
    }

    pub fn dtau(&self) -> f64 {
        self.dtau
    }

    pub fn total_steps(&self) -> usize {
        self.total_steps
    }

    pub fn steps_taken(&self) -> usize {
        self.taken
    }

    pub fn is_finished(&self) -> bool {
        self.taken >= self.total_steps
    }

    /// Advances one step: grid, then solution, then optional projection.
    pub fn step(&mut self) -> Result<()> {
        let level = &self.level;
        let dtau = self.dtau;
        let x_np1 = grid_step(self.cfg.grid, level, dtau)?;
        let u_np1 = match (self.cfg.scheme, &self.previous) {
            (SchemeKind::Ftcs, _) => step_ftcs(level, &x_np1, dtau)?,
            (SchemeKind::InvariantFtcs, _) | (SchemeKind::InvariantLeapfrog, None) => {
                step_invariant_ftcs(level, &x_np1, dtau)?
            }
            (SchemeKind::InvariantLeapfrog, Some(prev)) => {
                step_invariant_leapfrog(level, &prev.x, &prev.u, &x_np1, dtau)?
            }
        };
        self.taken += 1;
        let tau = if self.is_finished() { self.cfg.t_final } else { self.taken as f64 * dtau };
        let uniform = level.uniform && self.cfg.grid == GridKind::Stationary;
        let mut next = MeshState { tau, period: PERIOD, x: x_np1, u: u_np1, uniform };
        next.validate()?;
        if let Some(method) = self.cfg.projection {
            let values = project(&next, &self.lattice, method)?;
            next = MeshState { tau, period: PERIOD, x: self.lattice.clone(), u: values, uniform: true };
        }
        let old = std::mem::replace(&mut self.level, next);
        if self.cfg.scheme == SchemeKind::InvariantLeapfrog {
            self.previous = Some(old);
        }
        Ok(())
    }
}

fn classify(e: &Error) -> FailureKind {
    match e {
        Error::PositivityLost { .. } => FailureKind::PositivityLost,
        Error::MeshTangled { .. } => FailureKind::MeshTangled,
        _ => FailureKind::Domain,
    }
}

/// Integrates `cfg` from the uniform lattice at `t = 0` to `t_final`.
///
/// Invalid configurations are errors; failures during stepping are recorded
/// in the result with the last good state.
pub fn run(cfg: &RunConfig) -> Result<RunResult> {
    let start = Instant::now();
    let mut sim = Simulation::new(cfg.clone())?;
    let mut failure = None;
    while !sim.is_finished() {
        if let Err(e) = sim.step() {
            failure = Some(RunFailure { step: sim.steps_taken(), kind: classify(&e), message: e.to_string() });
            break;
        }
    }
    Ok(RunResult {
        steps: sim.steps_taken(),
        dtau: sim.dtau(),
        wall_time_s: start.elapsed().as_secs_f64(),
        final_state: sim.level,
        failure,
    })
}

/// Maximum nodal error against the exact solution at the final positions.
pub fn linf_error(result: &RunResult, ic: &FourierIC) -> f64 {
    state_linf_error(&result.final_state, ic)
}

pub fn state_linf_error(state: &MeshState, ic: &FourierIC) -> f64 {
    state
        .x
        .iter()
        .zip(&state.u)
        .map(|(&x, &u)| (u - exact_solution(ic, x, state.tau)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_solution_examples() {
        let ic = FourierIC::shifted_sine();
        assert_eq!(exact_solution(&ic, 1.0, 0.0), 2.0);
        let v = exact_solution(&ic, 1.0 + FRAC_PI_2, 1.0);
        assert!((v - 2.367_879_441_171_442).abs() < 1e-15);
        assert!((exact_solution(&ic, 0.3, 60.0) - 2.0).abs() < 1e-15);
        let c = FourierIC::cosine();
        assert!((exact_solution(&c, 0.7, 0.0) - (0.7_f64.cos() + 2.0)).abs() < 1e-15);
    }

    #[test]
    fn parse_initial_conditions() {
        let ic: FourierIC = "const:2+sin:k=1,shift=1".parse().unwrap();
        assert_eq!(ic, FourierIC::shifted_sine());
        let cos: FourierIC = "const:2+cos:k=1".parse().unwrap();
        assert!((cos.eval(0.4) - FourierIC::cosine().eval(0.4)).abs() < 1e-15);
        let round: FourierIC = ic.to_string().parse().unwrap();
        assert_eq!(round, ic);
        assert!("const:x".parse::<FourierIC>().is_err());
        assert!("sin:k=0".parse::<FourierIC>().is_err());
        assert!("tan:k=1".parse::<FourierIC>().is_err());
        assert!("sin:q=1".parse::<FourierIC>().is_err());
    }

    #[test]
    fn ic_validation() {
        FourierIC::shifted_sine().validate().unwrap();
        let touching: FourierIC = "const:1+sin:k=1".parse().unwrap();
        assert!(touching.validate().is_err());
        assert!(FourierIC::constant(-1.0).validate().is_err());
    }

    #[test]
    fn time_steps_hit_final_time() {
        let cfg = RunConfig::invariant(16, None);
        let (steps, dtau) = cfg.time_steps();
        let h = cfg.h();
        assert!(dtau <= 0.25 * h * h);
        assert!((steps as f64 * dtau - 1.0).abs() < 1e-12);
        assert_eq!(steps, (1.0 / (0.25 * h * h)).ceil() as usize);
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = RunConfig::invariant(2, None);
        assert!(run(&cfg).is_err());
        cfg.n = 8;
        cfg.sigma = 0.0;
        assert!(run(&cfg).is_err());
        cfg.sigma = 0.25;
        cfg.t_final = -1.0;
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn linf_error_examples() {
        let ic = FourierIC::shifted_sine();
        let state = MeshState::uniform(8, PERIOD, 1.0, |x| exact_solution(&ic, x, 1.0));
        let mut result = RunResult { final_state: state, steps: 0, dtau: 0.1, wall_time_s: 0.0, failure: None };
        assert_eq!(linf_error(&result, &ic), 0.0);
        for u in &mut result.final_state.u {
            *u += 1e-3;
        }
        assert!((linf_error(&result, &ic) - 1e-3).abs() < 1e-15);
    }
}
