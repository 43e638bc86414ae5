//! Residuals and explicit solves for the FTCS scheme in computational
//! coordinates, its invariantized counterpart and the invariant leapfrog
//! scheme, plus order-`p` centered weights and the invariantized second
//! derivative built from them.
//!
//! Every explicit solve advances the grid first and the solution second,
//! so no nonlinear iteration is needed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::mesh::MeshState;
use crate::stencil::Stencil;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    Ftcs,
    InvariantFtcs,
    InvariantLeapfrog,
}

impl SchemeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeKind::Ftcs => "ftcs",
            SchemeKind::InvariantFtcs => "invariant_ftcs",
            SchemeKind::InvariantLeapfrog => "invariant_leapfrog",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ftcs" => Ok(SchemeKind::Ftcs),
            "invariant_ftcs" | "invariant-ftcs" => Ok(SchemeKind::InvariantFtcs),
            "invariant_leapfrog" | "invariant-leapfrog" => Ok(SchemeKind::InvariantLeapfrog),
            other => Err(Error::InvalidConfig(format!("unknown scheme {other:?}"))),
        }
    }
}

/// A residual split into its time-difference and spatial parts, so that
/// exactness can be judged relative to the size of the terms that cancel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualTerms {
    pub time: f64,
    pub space: f64,
}

impl ResidualTerms {
    pub fn value(&self) -> f64 {
        self.time - self.space
    }

    pub fn scale(&self) -> f64 {
        self.time.abs() + self.space.abs()
    }
}

fn ensure_stencil_positive(z: &Stencil) -> Result<()> {
    for u in [z.u_im1, z.u_i, z.u_ip1, z.u_i_np1] {
        ensure_positive(u)?;
    }
    Ok(())
}

/// `4/(h+ + h-)^2 (u_{i+1} r^{-h+/(h++h-)} + u_{i-1} r^{h-/(h++h-)} - 2 u_i)`
/// with `r = u_{i+1}/u_{i-1}`.
fn invariant_space_term(z: &Stencil) -> f64 {
    let width = z.span();
    let log_ratio = z.u_ip1.ln() - z.u_im1.ln();
    let plus = z.u_ip1 * (-log_ratio * z.h_plus() / width).exp();
    let minus = z.u_im1 * (log_ratio * z.h_minus() / width).exp();
    4.0 / (width * width) * (plus + minus - 2.0 * z.u_i)
}

/// Exponent `dtau (x_tau L + L^2)` for grid velocity `x_tau` and log-slope `L`.
fn drift_exponent(dtau: f64, velocity: f64, slope: f64) -> f64 {
    dtau * (velocity * slope + slope * slope)
}

fn ftcs_space_term(z: &Stencil) -> f64 {
    let width = z.span();
    4.0 / (width * width)
        * (z.u_ip1 + z.u_im1 - 2.0 * z.u_i - (z.h_plus() - z.h_minus()) * z.u_slope())
}

pub fn ftcs_terms(z: &Stencil) -> ResidualTerms {
    let time = (z.u_i_np1 - z.u_i) / z.dtau - z.grid_velocity() * z.u_slope();
    ResidualTerms { time, space: ftcs_space_term(z) }
}

/// FTCS scheme in computational coordinates.
pub fn residual_ftcs(z: &Stencil) -> f64 {
    ftcs_terms(z).value()
}

pub fn invariant_ftcs_terms(z: &Stencil) -> Result<ResidualTerms> {
    ensure_stencil_positive(z)?;
    let l = z.log_slope();
    let damping = (-drift_exponent(z.dtau, z.grid_velocity(), l)).exp();
    let time = (damping * z.u_i_np1 - z.u_i) / z.dtau;
    Ok(ResidualTerms { time, space: invariant_space_term(z) })
}

/// Residual `S` of the invariantized FTCS scheme.
pub fn residual_invariant_ftcs(z: &Stencil) -> Result<f64> {
    Ok(invariant_ftcs_terms(z)?.value())
}

pub fn invariant_leapfrog_terms(z: &Stencil) -> Result<ResidualTerms> {
    ensure_stencil_positive(z)?;
    let prev = z
        .prev
        .ok_or_else(|| Error::InvalidStencil("leapfrog needs a previous time level".into()))?;
    ensure_positive(prev.u_i)?;
    let l = z.log_slope();
    let forward = (-drift_exponent(z.dtau, z.grid_velocity(), l)).exp();
    let back_velocity = (z.x_i - prev.x_i) / z.dtau;
    let backward = drift_exponent(z.dtau, back_velocity, l).exp();
    let time = (forward * z.u_i_np1 - backward * prev.u_i) / (2.0 * z.dtau);
    Ok(ResidualTerms { time, space: invariant_space_term(z) })
}

/// Residual of the invariant leapfrog scheme (three time levels).
pub fn residual_invariant_leapfrog(z: &Stencil) -> Result<f64> {
    Ok(invariant_leapfrog_terms(z)?.value())
}

fn check_lengths(level: &MeshState, x_np1: &[f64]) -> Result<()> {
    if level.len() < 3 {
        return Err(Error::InvalidConfig(format!("{} nodes, schemes need at least 3", level.len())));
    }
    if x_np1.len() != level.len() {
        return Err(Error::InvalidConfig(format!(
            "{} new positions for {} nodes",
            x_np1.len(),
            level.len()
        )));
    }
    Ok(())
}

/// Solves the invariant FTCS scheme for `u^{n+1}` on the positions `x_np1`.
pub fn step_invariant_ftcs(level: &MeshState, x_np1: &[f64], dtau: f64) -> Result<Vec<f64>> {
    check_lengths(level, x_np1)?;
    level.validate_positive()?;
    (0..level.len())
        .map(|i| {
            let z = level.stencil_at(i, x_np1[i], 1.0, dtau);
            let base = z.u_i + dtau * invariant_space_term(&z);
            if !(base > 0.0) {
                return Err(Error::PositivityLost { node: i, value: base });
            }
            Ok(drift_exponent(dtau, z.grid_velocity(), z.log_slope()).exp() * base)
        })
        .collect()
}

/// Solves the invariant leapfrog scheme for `u^{n+1}` given level `n-1`
/// (positions `x_nm1`, values `u_nm1`) and the new positions `x_np1`.
pub fn step_invariant_leapfrog(
    level: &MeshState,
    x_nm1: &[f64],
    u_nm1: &[f64],
    x_np1: &[f64],
    dtau: f64,
) -> Result<Vec<f64>> {
    check_lengths(level, x_np1)?;
    check_lengths(level, x_nm1)?;
    check_lengths(level, u_nm1)?;
    level.validate_positive()?;
    let back = level.displacement(x_nm1);
    (0..level.len())
        .map(|i| {
            let z = level.stencil_at(i, x_np1[i], 1.0, dtau);
            let l = z.log_slope();
            let um1 = ensure_positive(u_nm1[i])?;
            let back_velocity = -back[i] / dtau;
            let base = drift_exponent(dtau, back_velocity, l).exp() * um1
                + 2.0 * dtau * invariant_space_term(&z);
            if !(base > 0.0) {
                return Err(Error::PositivityLost { node: i, value: base });
            }
            Ok(drift_exponent(dtau, z.grid_velocity(), l).exp() * base)
        })
        .collect()
}

/// Solves the FTCS scheme in computational coordinates for `u^{n+1}`.
pub fn step_ftcs(level: &MeshState, x_np1: &[f64], dtau: f64) -> Result<Vec<f64>> {
    check_lengths(level, x_np1)?;
    Ok((0..level.len())
        .map(|i| {
            let z = level.stencil_at(i, x_np1[i], 1.0, dtau);
            z.u_i + (z.x_i_np1 - z.x_i) * z.u_slope() + dtau * ftcs_space_term(&z)
        })
        .collect())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Centered weights `c^k_{p,j}`, `j = -p/2..=p/2`, for the first (`k = 1`)
/// or second (`k = 2`) derivative at order `p`.
pub fn centered_weights(p: usize, k: usize) -> Result<Vec<f64>> {
    if p < 2 || !p.is_multiple_of(2) {
        return Err(Error::InvalidOrder(p));
    }
    let half = (p / 2) as i64;
    let first = |j: i64| -> f64 {
        if j == 0 {
            return 0.0;
        }
        let sign = if (j + 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let hf = factorial(half as usize);
        sign * hf * hf
            / (j as f64 * factorial((half + j) as usize) * factorial((half - j) as usize))
    };
    match k {
        1 => Ok((-half..=half).map(first).collect()),
        2 => {
            let centre = -2.0 * (1..=half).map(|i| 1.0 / (i * i) as f64).sum::<f64>();
            Ok((-half..=half)
                .map(|j| if j == 0 { centre } else { 2.0 * first(j) / j as f64 })
                .collect())
        }
        _ => Err(Error::InvalidConfig(format!("derivative order {k} not supported"))),
    }
}

/// Order-`p` invariantized second derivative on `p + 1` uniformly spaced
/// values centred on the middle one:
///
/// `(1/hx^2)(1/u_c) sum_j c^2_{p,j} exp(-eps5 j hx) u_j`,
/// with `eps5 = (1/hx) sum_j c^1_{p,j} ln u_j`.
///
/// It approximates `(u_xx - u_x^2/u) / u` at the centre node.
pub fn invariantized_spatial_p(u: &[f64], hx: f64, p: usize) -> Result<f64> {
    let c1 = centered_weights(p, 1)?;
    let c2 = centered_weights(p, 2)?;
    if u.len() != p + 1 {
        return Err(Error::InvalidConfig(format!("order {p} needs {} values, got {}", p + 1, u.len())));
    }
    let logs = u.iter().map(|&v| ensure_positive(v).map(f64::ln)).collect::<Result<Vec<_>>>()?;
    let eps5 = c1.iter().zip(&logs).map(|(c, l)| c * l).sum::<f64>() / hx;
    let half = (p / 2) as i64;
    let sum: f64 = c2
        .iter()
        .zip(u)
        .zip(-half..=half)
        .map(|((c, &v), j)| c * (-eps5 * j as f64 * hx).exp() * v)
        .sum();
    Ok(sum / (hx * hx * u[p / 2]))
}
