//! The five-parameter symmetry group of the heat equation `u_t = u_xx`
//! generated by time and space translations, scaling of `u`, the joint
//! scaling `2t d/dt + x d/dx` and Galilean boosts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stencil::{PrevLevel, Stencil};

/// A point `(t, x, u)` of the space of independent and dependent variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub t: f64,
    pub x: f64,
    pub u: f64,
}

impl Point {
    pub fn new(t: f64, x: f64, u: f64) -> Self {
        Self { t, x, u }
    }
}

/// Group parameters acting simultaneously through
///
/// ```text
/// t' = e^{2 eps4} (t + eps1)
/// x' = e^{eps4} (x + eps2 + 2 eps5 t)
/// u' = e^{eps3 - eps5 x - eps5^2 t} u
/// ```
///
/// No composition law is provided; elements only act on points and stencils.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GroupElement {
    /// Time translation.
    pub eps1: f64,
    /// Space translation.
    pub eps2: f64,
    /// Log-amplitude scaling of `u`.
    pub eps3: f64,
    /// Joint scaling: `t` by `e^{2 eps4}`, `x` by `e^{eps4}`.
    pub eps4: f64,
    /// Galilean boost.
    pub eps5: f64,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(eps1: f64, eps2: f64, eps3: f64, eps4: f64, eps5: f64) -> Self {
        Self { eps1, eps2, eps3, eps4, eps5 }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.eps1, self.eps2, self.eps3, self.eps4, self.eps5]
    }

    pub fn apply_point(&self, p: Point) -> Point {
        let t = (2.0 * self.eps4).exp() * (p.t + self.eps1);
        let x = self.eps4.exp() * (p.x + self.eps2 + 2.0 * self.eps5 * p.t);
        let u = (self.eps3 - self.eps5 * p.x - self.eps5 * self.eps5 * p.t).exp() * p.u;
        Point { t, x, u }
    }

    /// Product action on a stencil. The time of each entry is implied by its
    /// slot: `tau_n` for level `n`, `tau_n + dtau` for `n+1`, `tau_n - dtau`
    /// for `n-1`.
    pub fn apply_stencil(&self, z: &Stencil) -> Stencil {
        let tn = z.tau_n;
        let level_n = |x: f64, u: f64| self.apply_point(Point::new(tn, x, u));
        let im1 = level_n(z.x_im1, z.u_im1);
        let i = level_n(z.x_i, z.u_i);
        let ip1 = level_n(z.x_ip1, z.u_ip1);
        let np1 = self.apply_point(Point::new(tn + z.dtau, z.x_i_np1, z.u_i_np1));
        let prev = z.prev.map(|p| {
            let q = self.apply_point(Point::new(tn - z.dtau, p.x_i, p.u_i));
            PrevLevel { x_i: q.x, u_i: q.u }
        });
        Stencil {
            tau_n: i.t,
            dtau: (2.0 * self.eps4).exp() * z.dtau,
            x_im1: im1.x,
            x_i: i.x,
            x_ip1: ip1.x,
            x_i_np1: np1.x,
            u_im1: im1.u,
            u_i: i.u,
            u_ip1: ip1.u,
            u_i_np1: np1.u,
            prev,
        }
    }
}

/// One-parameter subgroup of generator `k`: `eps_k = s`, all others zero.
///
/// `k = 4` corresponds to `2t d/dt + x d/dx` and `k = 5` to
/// `2t d/dx - x u d/du`.
pub fn generator_flow(k: usize, s: f64) -> Result<GroupElement> {
    let mut g = GroupElement::identity();
    match k {
        1 => g.eps1 = s,
        2 => g.eps2 = s,
        3 => g.eps3 = s,
        4 => g.eps4 = s,
        5 => g.eps5 = s,
        _ => return Err(Error::InvalidGenerator(k)),
    }
    Ok(g)
}

/// Default finite-difference step for [`lie_derivative`].
pub fn default_lie_step(z: &Stencil) -> f64 {
    1e-6 * z.max_abs().max(1.0)
}

/// Central-difference approximation of the prolonged generator `pr v_k`
/// applied to `f` at `z`.
pub fn lie_derivative<F>(f: F, k: usize, z: &Stencil, step: f64) -> Result<f64>
where
    F: Fn(&Stencil) -> Result<f64>,
{
    if !(step > 0.0) {
        return Err(Error::InvalidConfig(format!("lie derivative step {step} must be positive")));
    }
    let forward = generator_flow(k, step)?.apply_stencil(z);
    let backward = generator_flow(k, -step)?.apply_stencil(z);
    Ok((f(&forward)? - f(&backward)?) / (2.0 * step))
}
