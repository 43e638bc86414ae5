mod common;

use common::{orders, rel_close, sampled};
use invariant_heat::harness::{random_framed_stencil, random_group_element};
use invariant_heat::{canonical_form, continuous_frame, discrete_frame, Error, Jet1Point, Stencil};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn components(z: &Stencil) -> [f64; 9] {
    [z.tau_n, z.dtau, z.x_im1, z.x_i, z.x_ip1, z.x_i_np1, z.u_im1, z.u_ip1, z.u_i_np1]
}

fn growing(t: f64, x: f64) -> f64 {
    t.exp() * (2.0 + x.sin())
}

proptest! {
    #[test]
    fn canonical_form_is_constant_on_orbits(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_framed_stencil(&mut rng);
        let g = random_group_element(&mut rng);
        let gz = g.apply_stencil(&z);
        if let (Ok(a), Ok(b)) = (canonical_form(&z), canonical_form(&gz)) {
            for (p, q) in components(&a).into_iter().zip(components(&b)) {
                prop_assert!(rel_close(p, q, 1e-9), "{p} vs {q}");
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_framed_stencil(&mut rng);
        let once = canonical_form(&z).unwrap();
        let twice = canonical_form(&once).unwrap();
        for (p, q) in components(&once).into_iter().zip(components(&twice)) {
            prop_assert!(rel_close(p, q, 1e-10));
        }
    }

    #[test]
    fn canonical_form_lies_on_cross_section(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = canonical_form(&random_framed_stencil(&mut rng)).unwrap();
        prop_assert!(c.tau_n.abs() < 1e-10);
        prop_assert!(c.x_i.abs() < 1e-10);
        prop_assert!((c.u_i - 1.0).abs() < 1e-10);
        prop_assert!(c.log_slope().abs() < 1e-9);
    }
}

#[test]
fn discrete_frame_tends_to_continuous_frame() {
    let (t, x) = (0.4, 0.7);
    let jet = Jet1Point {
        t,
        x,
        u: growing(t, x),
        u_t: growing(t, x),
        u_x: t.exp() * x.cos(),
    };
    let exact = continuous_frame(&jet).unwrap().as_array();
    let hs = [0.1, 0.05, 0.025];
    let errors: Vec<f64> = hs
        .iter()
        .map(|&h| {
            let d = discrete_frame(&sampled(growing, t, x, h, h * h)).unwrap().as_array();
            d.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .collect();
    for p in orders(&errors, 2.0) {
        assert!(p > 0.9, "observed frame order {p} from {errors:?}");
    }
}

#[test]
fn frame_is_undefined_for_concave_log_data() {
    // u_t = u_xx < u_x^2 / u at the crest of a decaying sine
    let z = sampled(|t, x| 2.0 + (-t).exp() * x.sin(), 0.0, std::f64::consts::FRAC_PI_2, 0.01, 1e-4);
    assert!(matches!(discrete_frame(&z), Err(Error::FrameUndefined { .. })));
}
