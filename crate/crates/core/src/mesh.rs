//! Periodic 1D meshes and the invariant grid equations.
//!
//! Node positions are kept wrapped into `[0, period)`. Node `i` is
//! followed cyclically by node `i + 1`, so after the grid has moved the
//! array may carry one seam where the stored values decrease.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::stencil::Stencil;

/// Relative tolerance for the gaps to sum to the period.
pub const GAP_SUM_TOLERANCE: f64 = 1e-10;

/// One time level on a periodic mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshState {
    pub tau: f64,
    pub period: f64,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    /// True when `x` is exactly the uniform lattice `i * period / N`.
    pub uniform: bool,
}

/// Reduces `x` into `[0, period)`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid may round up to exactly `period`
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Representative of `d` modulo `period` in `[-period/2, period/2)`.
pub fn signed_offset(d: f64, period: f64) -> f64 {
    wrap(d + 0.5 * period, period) - 0.5 * period
}

/// The uniform lattice `i * period / n`.
pub fn uniform_lattice(n: usize, period: f64) -> Vec<f64> {
    let h = period / n as f64;
    (0..n).map(|i| i as f64 * h).collect()
}

impl MeshState {
    /// Samples `f` on the uniform lattice.
    pub fn uniform<F: Fn(f64) -> f64>(n: usize, period: f64, tau: f64, f: F) -> Self {
        let x = uniform_lattice(n, period);
        let u = x.iter().map(|&xi| f(xi)).collect();
        Self { tau, period, x, u, uniform: true }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// Periodic gap `x_{i+1} - x_i` reduced into `[0, period)`.
    pub fn gap(&self, i: usize) -> f64 {
        wrap(self.x[self.next(i)] - self.x[i], self.period)
    }

    /// `(h-, h+)` around node `i`.
    pub fn spacing(&self, i: usize) -> (f64, f64) {
        (self.gap(self.prev(i)), self.gap(i))
    }

    /// Mesh validity: every periodic gap is positive and the gaps close up
    /// to exactly one period.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if n < 2 {
            return Err(Error::MeshTangled { reason: format!("{n} nodes, need at least 2") });
        }
        if self.u.len() != n {
            return Err(Error::InvalidConfig(format!(
                "{} positions but {} values",
                n,
                self.u.len()
            )));
        }
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::InvalidConfig(format!("period {} is not positive", self.period)));
        }
        if self.x.iter().any(|x| !x.is_finite()) {
            return Err(Error::MeshTangled { reason: "non-finite node position".into() });
        }
        let mut sum = 0.0;
        for i in 0..n {
            let g = self.gap(i);
            if !(g > 0.0) {
                return Err(Error::MeshTangled { reason: format!("gap {i} is {g}") });
            }
            sum += g;
        }
        if (sum - self.period).abs() > GAP_SUM_TOLERANCE * self.period {
            return Err(Error::MeshTangled {
                reason: format!("gaps sum to {sum}, period is {}", self.period),
            });
        }
        Ok(())
    }

    /// Checks that every value is strictly positive.
    pub fn validate_positive(&self) -> Result<()> {
        for &u in &self.u {
            ensure_positive(u)?;
        }
        Ok(())
    }

    /// Builds the stencil centred at node `i` in a local chart around `x_i`.
    pub fn stencil_at(&self, i: usize, x_i_np1: f64, u_i_np1: f64, dtau: f64) -> Stencil {
        let (h_minus, h_plus) = self.spacing(i);
        let x_i = self.x[i];
        Stencil {
            tau_n: self.tau,
            dtau,
            x_im1: x_i - h_minus,
            x_i,
            x_ip1: x_i + h_plus,
            x_i_np1: x_i + signed_offset(x_i_np1 - x_i, self.period),
            u_im1: self.u[self.prev(i)],
            u_i: self.u[i],
            u_ip1: self.u[self.next(i)],
            u_i_np1,
            prev: None,
        }
    }

    /// Per-node displacement from `self.x` to `x_new`, reduced periodically.
    pub fn displacement(&self, x_new: &[f64]) -> Vec<f64> {
        self.x
            .iter()
            .zip(x_new)
            .map(|(&a, &b)| signed_offset(b - a, self.period))
            .collect()
    }
}

/// Which grid equation advances the node positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Stationary,
    Invariantized,
    Dorodnitsyn,
}

fn log_span_terms(m: &MeshState, i: usize) -> Result<(f64, f64, f64, f64, f64)> {
    let (h_minus, h_plus) = m.spacing(i);
    let um = ensure_positive(m.u[m.prev(i)])?;
    let u0 = ensure_positive(m.u[i])?;
    let up = ensure_positive(m.u[m.next(i)])?;
    Ok((h_minus, h_plus, um, u0, up))
}

/// Invariantized grid equation: `x_i^{n+1} = x_i^n - 2 dtau (ln u)_x^d`,
/// the node velocity being `-2` times the centered log-slope.
pub fn grid_step_invariantized(m: &MeshState, dtau: f64) -> Result<Vec<f64>> {
    (0..m.len())
        .map(|i| {
            let (h_minus, h_plus, um, _, up) = log_span_terms(m, i)?;
            let slope = (up.ln() - um.ln()) / (h_plus + h_minus);
            Ok(wrap(m.x[i] - 2.0 * dtau * slope, m.period))
        })
        .collect()
}

/// Difference-invariant grid equation, invariant under the full symmetry
/// group. On uniform spacing it coincides with [`grid_step_invariantized`].
pub fn grid_step_dorodnitsyn(m: &MeshState, dtau: f64) -> Result<Vec<f64>> {
    (0..m.len())
        .map(|i| {
            let (h_minus, h_plus, um, u0, up) = log_span_terms(m, i)?;
            let bracket = (h_plus / h_minus) * (um / u0).ln() - (h_minus / h_plus) * (up / u0).ln();
            Ok(wrap(m.x[i] + 2.0 * dtau / (h_plus + h_minus) * bracket, m.period))
        })
        .collect()
}

/// Grid step selected by `kind`; `Stationary` returns the current positions.
pub fn grid_step(kind: GridKind, m: &MeshState, dtau: f64) -> Result<Vec<f64>> {
    match kind {
        GridKind::Stationary => Ok(m.x.clone()),
        GridKind::Invariantized => grid_step_invariantized(m, dtau),
        GridKind::Dorodnitsyn => grid_step_dorodnitsyn(m, dtau),
    }
}

/// Residual `M` of the invariantized grid equation on a stencil.
pub fn grid_residual_invariantized(z: &Stencil) -> Result<f64> {
    for u in [z.u_im1, z.u_ip1] {
        ensure_positive(u)?;
    }
    Ok(z.x_i_np1 - z.x_i + 2.0 * z.dtau * z.log_slope())
}

/// Residual of the difference-invariant grid equation on a stencil.
pub fn grid_residual_dorodnitsyn(z: &Stencil) -> Result<f64> {
    for u in [z.u_im1, z.u_i, z.u_ip1] {
        ensure_positive(u)?;
    }
    let (h_minus, h_plus) = (z.h_minus(), z.h_plus());
    let bracket =
        (h_plus / h_minus) * (z.u_im1 / z.u_i).ln() - (h_minus / h_plus) * (z.u_ip1 / z.u_i).ln();
    Ok(z.x_i_np1 - z.x_i - 2.0 * z.dtau / (h_plus + h_minus) * bracket)
}

/// Magnitude against which grid residuals are compared.
pub fn grid_residual_scale(z: &Stencil) -> f64 {
    z.x_i_np1.abs().max(z.x_i.abs()).max((z.x_i_np1 - z.x_i).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn three_nodes(x: [f64; 3], u: [f64; 3], period: f64) -> MeshState {
        MeshState { tau: 0.0, period, x: x.to_vec(), u: u.to_vec(), uniform: false }
    }

    #[test]
    fn symmetric_data_does_not_move_node() {
        let m = three_nodes([0.0, 1.0, 2.0], [1.3, 2.0, 1.3], 3.0);
        let x = grid_step_invariantized(&m, 0.1).unwrap();
        assert_eq!(x[1], 1.0);
        let x = grid_step_dorodnitsyn(&m, 0.1).unwrap();
        assert!((x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_ratio_e_moves_by_dtau_over_h() {
        // h+ = h- = 1, u_{i+1} = e u_{i-1}: the node moves by -dtau / h
        let m = three_nodes([0.0, 1.0, 2.0], [1.0, 1.5, E], 3.0);
        let x = grid_step_invariantized(&m, 0.2).unwrap();
        assert!((x[1] - (1.0 - 0.2)).abs() < 1e-15);
    }

    #[test]
    fn constant_data_is_stationary() {
        let m = MeshState::uniform(8, 2.0 * PI, 0.0, |_| 2.0);
        assert_eq!(grid_step_invariantized(&m, 0.3).unwrap(), m.x);
        assert_eq!(grid_step_dorodnitsyn(&m, 0.3).unwrap(), m.x);
    }

    #[test]
    fn dorodnitsyn_hand_value() {
        // h+ = 2, h- = 1, u = (1, 1, e), dtau = 0.3
        let m = three_nodes([0.0, 1.0, 3.0], [1.0, 1.0, E], 4.0);
        let x = grid_step_dorodnitsyn(&m, 0.3).unwrap();
        assert!((x[1] - (1.0 - 0.1)).abs() < 1e-15, "{}", x[1]);
    }

    #[test]
    fn grid_equations_coincide_on_uniform_mesh() {
        let m = MeshState::uniform(16, 2.0 * PI, 0.0, |x| 2.0 + (x - 1.0).sin());
        let a = grid_step_invariantized(&m, 0.01).unwrap();
        let b = grid_step_dorodnitsyn(&m, 0.01).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).abs() < 1e-14);
        }
    }

    #[test]
    fn validate_cases() {
        let m = MeshState::uniform(8, 2.0 * PI, 0.0, |_| 1.0);
        m.validate().unwrap();

        let mut coincident = m.clone();
        coincident.x[3] = coincident.x[2];
        assert!(matches!(coincident.validate(), Err(Error::MeshTangled { .. })));

        let mut shifted = m.clone();
        for x in &mut shifted.x {
            *x = wrap(*x - 0.1, 2.0 * PI);
        }
        shifted.validate().unwrap();

        let mut crossed = m.clone();
        crossed.x.swap(2, 3);
        assert!(matches!(crossed.validate(), Err(Error::MeshTangled { .. })));
    }

    #[test]
    fn non_positive_values_rejected() {
        let m = three_nodes([0.0, 1.0, 2.0], [1.0, 0.0, 1.0], 3.0);
        assert!(matches!(grid_step_invariantized(&m, 0.1), Err(Error::NonPositive { .. })));
        assert!(matches!(grid_step_dorodnitsyn(&m, 0.1), Err(Error::NonPositive { .. })));
    }

    #[test]
    fn stencil_unwraps_across_seam() {
        let period = 2.0 * PI;
        let mut m = MeshState::uniform(8, period, 0.5, |x| 2.0 + x.cos());
        for x in &mut m.x {
            *x = wrap(*x - 0.2, period);
        }
        let z = m.stencil_at(0, wrap(m.x[0] + 0.05, period), 2.0, 0.01);
        let h = period / 8.0;
        assert!((z.h_minus() - h).abs() < 1e-14);
        assert!((z.h_plus() - h).abs() < 1e-14);
        assert!((z.x_i_np1 - z.x_i - 0.05).abs() < 1e-14);
    }

    #[test]
    fn wrap_stays_in_range() {
        let p = 2.0 * PI;
        assert_eq!(wrap(-1e-18, p), 0.0);
        assert!(wrap(-0.1, p) > 6.0);
        assert!((signed_offset(p - 0.1, p) + 0.1).abs() < 1e-15);
    }
}
