use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("invalid norm exponent {0}; exponents must satisfy p >= 1")]
    InvalidExponent(f64),

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (minimum eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace {0} is not 1")]
    NotNormalized(f64),

    #[error("operator basis is not orthonormal (deviation {0:e})")]
    NonOrthonormalBasis(f64),

    #[error("map is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("map is not completely positive (minimum Choi eigenvalue {0:e})")]
    NotCompletelyPositive(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("empty Kraus set")]
    EmptyKraus,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
