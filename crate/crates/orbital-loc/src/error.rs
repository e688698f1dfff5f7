//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the verification library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root-system family: {0}")]
    UnsupportedFamily(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("matrix is not in the algebra: {0}")]
    NotInAlgebra(String),

    #[error("point is not regular: pairing with root {root:?} is {value:.3e}")]
    NonRegularPoint { root: Vec<f64>, value: f64 },

    #[error("extrapolation did not stabilize: {0}")]
    ExtrapolationFailure(String),

    #[error("base point is not in the closed dominant chamber: {0}")]
    NonDominant(String),

    #[error("quadrature scheme incompatible with orbit: {0}")]
    SchemeMismatch(String),

    #[error("Monte-Carlo standard error {stderr:.3e} exceeds requested tolerance {tol:.3e}")]
    McVarianceOverflow { stderr: f64, tol: f64 },

    #[error("form has no registered exterior derivative: {0}")]
    UnregisteredDerivative(String),

    #[error("quadrature failed to reach tolerance: {0}")]
    QuadratureFailure(String),

    #[error("polynomial degree {0} exceeds the supported maximum {1}")]
    DegreeOverflow(usize, usize),

    #[error("grid too coarse: finite-difference error estimate {est:.3e} exceeds {tol:.3e}")]
    GridTooCoarse { est: f64, tol: f64 },

    #[error("form is not equivariantly closed: residual {0:.3e}")]
    NotClosed(f64),

    #[error("no critical value found: {0}")]
    NoCriticalValue(String),

    #[error("level is not regular: {0}")]
    NonRegularLevel(String),

    #[error("moment-map level set is empty or not regular: {0}")]
    NoRegularLevel(String),

    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
