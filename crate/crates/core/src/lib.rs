//! Symmetry-preserving finite-difference schemes for the periodic 1D heat
//! equation `u_t = u_xx`.
//!
//! The crate provides the five-parameter symmetry group and its action on
//! stencils ([`group`]), discrete and continuous moving frames ([`frame`]),
//! invariantized FTCS and leapfrog schemes ([`schemes`]), invariant grid
//! equations on periodic moving meshes ([`mesh`]), invariant interpolation
//! for projecting back to a uniform lattice ([`interpolation`]), the time
//! loop ([`driver`]) and the experiment harness behind the `invheat` binary
//! ([`harness`]).

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod driver;
pub mod error;
pub mod frame;
pub mod group;
pub mod harness;
pub mod interpolation;
pub mod mesh;
pub mod schemes;
pub mod stencil;

pub use driver::{exact_solution, linf_error, run, FourierIC, Mode, RunConfig, RunResult, Simulation};
pub use error::{Error, Result};
pub use frame::{canonical_form, continuous_frame, discrete_frame, hat_log_slope, Jet1Point};
pub use group::{generator_flow, lie_derivative, GroupElement, Point};
pub use interpolation::{Node, ProjectionMethod};
pub use mesh::{GridKind, MeshState};
pub use schemes::SchemeKind;
pub use stencil::{PrevLevel, Stencil};
