//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate element {element}: {detail}")]
    DegenerateElement { element: usize, detail: String },

    #[error("assembly failed on element {element}: weight is not finite at a quadrature point")]
    NonFiniteWeight { element: usize },

    #[error("unsupported polynomial degree {0}")]
    UnsupportedDegree(usize),

    #[error("functions live on different finite element spaces")]
    SpaceMismatch,

    #[error("matrix is singular to working precision: {0}")]
    Singular(String),

    #[error("saddle point solve failed (constraint rank deficient or ill-conditioned): {0}")]
    InfSupFailure(String),

    #[error("degenerate extrapolation: |u| = {norm:.3e} at node {node}")]
    DegenerateExtrapolation { node: usize, norm: f64 },

    #[error("normalization failure: |u| = {norm:.3e} at node {node}")]
    NormalizationFailure { node: usize, norm: f64 },

    #[error("fixed point iteration did not converge within {iterations} iterations at step {step}")]
    FixedPointDivergence { step: usize, iterations: usize },

    #[error("point with radius {radius} lies outside the unit disk")]
    OutOfDomain { radius: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
