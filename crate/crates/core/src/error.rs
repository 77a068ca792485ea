use thiserror::Error;

/// Errors raised by the analysis pipeline, certificate construction and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weight {index} is not positive ({value})")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{what} residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("diagonal entry {0} is zero")]
    ZeroDiagonal(usize),

    #[error("dependent block {0} is numerically singular")]
    SingularDependentBlock(usize),

    #[error("matrix is not diagonally dominant; no verdict available")]
    NotApplicable,

    #[error("matrix of order {n} exceeds the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("could not draw a strongly connected support after {attempts} attempts")]
    DegenerateSupport { attempts: usize },

    #[error("invalid tolerance {name} = {value:e}: must lie in (0, 0.1)")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("matrix has non-real entries; exact mode requires a real matrix")]
    NotReal,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
