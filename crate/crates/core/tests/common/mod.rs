#![allow(dead_code)]

use invariant_heat::{PrevLevel, Stencil};

/// `u = 2 + e^{-t} sin(x - 1)`.
pub fn decaying_sine(t: f64, x: f64) -> f64 {
    2.0 + (-t).exp() * (x - 1.0).sin()
}

/// `u = A e^{a x + a^2 t}`.
pub fn exponential(amp: f64, a: f64) -> impl Fn(f64, f64) -> f64 {
    move |t, x| amp * (a * x + a * a * t).exp()
}

/// Stationary uniform two-level stencil sampled from `u` around `(t, x)`.
pub fn sampled<F: Fn(f64, f64) -> f64>(u: F, t: f64, x: f64, hx: f64, dtau: f64) -> Stencil {
    Stencil {
        tau_n: t,
        dtau,
        x_im1: x - hx,
        x_i: x,
        x_ip1: x + hx,
        x_i_np1: x,
        u_im1: u(t, x - hx),
        u_i: u(t, x),
        u_ip1: u(t, x + hx),
        u_i_np1: u(t + dtau, x),
        prev: None,
    }
}

/// Same as [`sampled`] with the centre node at `t - dtau` filled in.
pub fn sampled_three_level<F: Fn(f64, f64) -> f64>(u: F, t: f64, x: f64, hx: f64, dtau: f64) -> Stencil {
    let prev = PrevLevel { x_i: x, u_i: u(t - dtau, x) };
    Stencil { prev: Some(prev), ..sampled(u, t, x, hx, dtau) }
}

/// Observed order from consecutive errors at parameters divided by `ratio`.
pub fn orders(errors: &[f64], ratio: f64) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).ln() / ratio.ln()).collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
