//! One discretization cell: three spatial nodes at level `n`, the centre
//! node at level `n+1` and, for leapfrog, the centre node at level `n-1`.
//!
//! Positions are stored in a local unwrapped chart, so `x_im1 < x_i < x_ip1`
//! holds for any valid stencil even across a periodic seam.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Centre node at the previous time level `tau_n - dtau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrevLevel {
    pub x_i: f64,
    pub u_i: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stencil {
    pub tau_n: f64,
    pub dtau: f64,
    pub x_im1: f64,
    pub x_i: f64,
    pub x_ip1: f64,
    pub x_i_np1: f64,
    pub u_im1: f64,
    pub u_i: f64,
    pub u_ip1: f64,
    pub u_i_np1: f64,
    pub prev: Option<PrevLevel>,
}

impl Stencil {
    pub fn h_plus(&self) -> f64 {
        self.x_ip1 - self.x_i
    }

    pub fn h_minus(&self) -> f64 {
        self.x_i - self.x_im1
    }

    /// `h+ + h-`, the width of the level-`n` stencil.
    pub fn span(&self) -> f64 {
        self.x_ip1 - self.x_im1
    }

    /// Discrete grid velocity `(x_i^{n+1} - x_i^n) / dtau`.
    pub fn grid_velocity(&self) -> f64 {
        (self.x_i_np1 - self.x_i) / self.dtau
    }

    /// Grid velocity between levels `n-1` and `n`, if the stencil has three levels.
    pub fn prev_grid_velocity(&self) -> Option<f64> {
        self.prev.map(|p| (self.x_i - p.x_i) / self.dtau)
    }

    /// Centered difference `(u_{i+1} - u_{i-1}) / (h+ + h-)`.
    pub fn u_slope(&self) -> f64 {
        (self.u_ip1 - self.u_im1) / self.span()
    }

    /// Centered log-difference `(ln u_{i+1} - ln u_{i-1}) / (h+ + h-)`.
    pub fn log_slope(&self) -> f64 {
        (self.u_ip1.ln() - self.u_im1.ln()) / self.span()
    }

    /// Checks spacing, time step and positivity.
    pub fn validate(&self) -> Result<()> {
        let values = [
            self.tau_n,
            self.dtau,
            self.x_im1,
            self.x_i,
            self.x_ip1,
            self.x_i_np1,
            self.u_im1,
            self.u_i,
            self.u_ip1,
            self.u_i_np1,
        ];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidStencil("non-finite entry".into()));
        }
        if !(self.dtau > 0.0) {
            return Err(Error::InvalidStencil(format!("dtau = {} is not positive", self.dtau)));
        }
        if !(self.h_plus() > 0.0 && self.h_minus() > 0.0) {
            return Err(Error::InvalidStencil(format!(
                "non-positive spacing h+ = {}, h- = {}",
                self.h_plus(),
                self.h_minus()
            )));
        }
        for u in [self.u_im1, self.u_i, self.u_ip1, self.u_i_np1] {
            if !(u > 0.0) {
                return Err(Error::NonPositive { value: u });
            }
        }
        if let Some(p) = self.prev {
            if !(p.x_i.is_finite() && p.u_i.is_finite()) {
                return Err(Error::InvalidStencil("non-finite previous level".into()));
            }
            if !(p.u_i > 0.0) {
                return Err(Error::NonPositive { value: p.u_i });
            }
        }
        Ok(())
    }

    /// Largest absolute entry, used to scale finite-difference steps.
    pub fn max_abs(&self) -> f64 {
        let mut m = [
            self.tau_n,
            self.dtau,
            self.x_im1,
            self.x_i,
            self.x_ip1,
            self.x_i_np1,
            self.u_im1,
            self.u_i,
            self.u_ip1,
            self.u_i_np1,
        ]
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        if let Some(p) = self.prev {
            m = m.max(p.x_i.abs()).max(p.u_i.abs());
        }
        m
    }
}
