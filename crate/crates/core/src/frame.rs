//! Moving frames: the continuous frame on first-order jets, the discrete
//! frame on the stencil space, and the canonical form it induces.
//!
//! The scaling component `eps4` is a logarithm and exists only where the
//! (discrete) invariantized time derivative is positive. Schemes never
//! evaluate the frame; they use closed-form residuals in which only
//! `e^{2 eps4}` appears.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::group::GroupElement;
use crate::mesh::MeshState;
use crate::stencil::Stencil;

/// First-order jet `(t, x, u, u_t, u_x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet1Point {
    pub t: f64,
    pub x: f64,
    pub u: f64,
    pub u_t: f64,
    pub u_x: f64,
}

/// Frame for the cross-section `t = 0, x = 0, u = 1, u_t = 1, u_x = 0`.
pub fn continuous_frame(j: &Jet1Point) -> Result<GroupElement> {
    if !(j.u > 0.0) {
        return Err(Error::NonPositive { value: j.u });
    }
    let slope = j.u_x / j.u;
    let argument = j.u_t / j.u - slope * slope;
    if !(argument > 0.0) {
        return Err(Error::FrameUndefined { argument });
    }
    Ok(GroupElement {
        eps1: -j.t,
        eps2: -(j.x + 2.0 * j.t * slope),
        eps3: -(j.u.ln() - j.x * slope - j.t * slope * slope),
        eps4: 0.5 * argument.ln(),
        eps5: slope,
    })
}

/// Argument of the `eps4` logarithm of the discrete frame, i.e. the
/// invariantized discrete time derivative divided by `u_i^n`.
pub fn discrete_scaling_argument(z: &Stencil) -> Result<f64> {
    for u in [z.u_im1, z.u_i, z.u_ip1, z.u_i_np1] {
        ensure_positive(u)?;
    }
    let l = z.log_slope();
    let damped = (-z.dtau * (z.grid_velocity() * l + l * l)).exp() * z.u_i_np1;
    Ok((damped - z.u_i) / (z.u_i * z.dtau))
}

/// Frame on the stencil space for the discrete normalization
/// `tau^n = 0, x_i^n = 0, u_i^n = 1, u_t^d = 1, u_x^d = 0`.
pub fn discrete_frame(z: &Stencil) -> Result<GroupElement> {
    let argument = discrete_scaling_argument(z)?;
    if !(argument > 0.0) {
        return Err(Error::FrameUndefined { argument });
    }
    let l = z.log_slope();
    Ok(GroupElement {
        eps1: -z.tau_n,
        eps2: -(z.x_i + 2.0 * z.tau_n * l),
        eps3: -(z.u_i.ln() - z.x_i * l - z.tau_n * l * l),
        eps4: 0.5 * argument.ln(),
        eps5: l,
    })
}

/// Representative of the orbit of `z`: the stencil moved to the cross-section.
pub fn canonical_form(z: &Stencil) -> Result<Stencil> {
    Ok(discrete_frame(z)?.apply_stencil(z))
}

/// Centered log-slope `(ln u_{i+1} - ln u_{i-1}) / (x_{i+1} - x_{i-1})` of a
/// level; the `eps5` component of the frame normalized at level `n+1`.
pub fn hat_log_slope(level: &MeshState, i: usize) -> Result<f64> {
    let (h_minus, h_plus) = level.spacing(i);
    let width = h_minus + h_plus;
    if !(width > 0.0) || h_minus <= 0.0 || h_plus <= 0.0 {
        return Err(Error::MeshTangled { reason: format!("degenerate stencil at node {i}") });
    }
    let um = ensure_positive(level.u[level.prev(i)])?;
    let up = ensure_positive(level.u[level.next(i)])?;
    Ok((up.ln() - um.ln()) / width)
}
