use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by frames, schemes, meshes and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// The moving frame does not exist at this point (the `eps4` logarithm
    /// or square root has a non-positive argument).
    #[error("moving frame undefined: scaling argument {argument} is not positive")]
    FrameUndefined { argument: f64 },

    /// A solution value that must be strictly positive is not.
    #[error("non-positive solution value {value}")]
    NonPositive { value: f64 },

    #[error("mesh is tangled: {reason}")]
    MeshTangled { reason: String },

    /// An explicit update produced a non-positive value where the scheme
    /// requires positivity.
    #[error("positivity lost at node {node}: value {value}")]
    PositivityLost { node: usize, value: f64 },

    #[error("invalid generator index {0}, expected 1..=5")]
    InvalidGenerator(usize),

    #[error("invalid stencil order {0}, expected an even integer >= 2")]
    InvalidOrder(usize),

    #[error("invalid stencil: {0}")]
    InvalidStencil(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse initial condition {input:?}: {reason}")]
    ParseInitialCondition { input: String, reason: String },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { value })
    }
}
