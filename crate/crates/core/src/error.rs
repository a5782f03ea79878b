use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("matrix dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not normal (operand {index:?}): ||AA* - A*A||_F = {defect:e}")]
    NotNormal { index: Option<usize>, defect: f64 },

    #[error("matrix is not Hermitian (operand {index:?}): ||A - A*||_F = {defect:e}")]
    NotHermitian { index: Option<usize>, defect: f64 },

    #[error("matrix is not positive semi-definite (operand {index:?}): min eigenvalue {min_eigenvalue:e}")]
    NotPsd { index: Option<usize>, min_eigenvalue: f64 },

    #[error("operand {index} is not expansive: min eigenvalue of Z*Z - I is {min_eigenvalue:e}")]
    NotExpansive { index: usize, min_eigenvalue: f64 },

    #[error("family is not contractive: max eigenvalue of sum Z_i*Z_i is {max_eigenvalue:e}")]
    NotContractive { max_eigenvalue: f64 },

    #[error("block ({row}, {col}) violates the partition precondition: {reason}")]
    Block { row: usize, col: usize, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),
}
