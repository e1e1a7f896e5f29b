use thiserror::Error;

/// Errors raised by the library. Axiom violations of metrics, graphs and
/// maps are not errors: they are collected into a
/// [`ValidationReport`](crate::ValidationReport).
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed distance matrix: {0}")]
    Structural(String),

    #[error("set {0} is empty")]
    EmptySet(&'static str),

    #[error("point {0} does not belong to the instance")]
    ForeignPoint(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("map does not preserve the edge {0}")]
    EdgeNotPreserved(String),

    /// The orbit produced a point outside A∪B. `last_valid` is the index of
    /// the last orbit point that was inside.
    #[error("orbit left A∪B after step {last_valid}: image {point} is not in the domain")]
    Orbit { last_valid: usize, point: String },

    #[error("unsupported operation: {0}")]
    Capability(String),

    #[error("hypothesis violated at step {step}: {detail}")]
    Hypothesis { step: usize, detail: String },

    #[error("invalid instance spec: {0}")]
    Spec(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
