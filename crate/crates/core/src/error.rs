use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Io,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a simplex point: {0}")]
    NotSimplex(String),

    #[error("outside simplex image")]
    OutsideSimplexImage,

    #[error("point outside the unit cube: {0}")]
    OutsideUnitCube(String),

    #[error("empty set")]
    EmptySet,

    #[error("degenerate observation: zero vector")]
    DegenerateObservation,

    #[error("invalid rejection threshold q={0}: must lie in [0, 1)")]
    InvalidThreshold(f64),

    #[error("{0}")]
    InvalidParameter(String),

    #[error("degenerate variance: test undefined")]
    DegenerateVariance,

    #[error("degenerate tail: {0}")]
    DegenerateTail(String),

    #[error("degenerate region: {0}")]
    DegenerateRegion(String),

    #[error("row {row}: {msg}")]
    Parse { row: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io(_) => ErrorClass::Io,
            Error::Csv(e) if e.is_io_error() => ErrorClass::Io,
            Error::DegenerateObservation
            | Error::DegenerateVariance
            | Error::DegenerateTail(_)
            | Error::DegenerateRegion(_) => ErrorClass::Numeric,
            _ => ErrorClass::Validation,
        }
    }
}
