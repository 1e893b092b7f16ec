use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("derivative order {0} exceeds the supported maximum of 3")]
    DerivativeOrder(u32),

    #[error("point {0:?} lies outside the unit square")]
    OutOfDomain(Vec<f64>),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("reference field is identically zero over the point set; relative error is undefined")]
    DegenerateReference,

    #[error("training diverged at epoch {epoch}: {what} is not finite")]
    Divergence { epoch: usize, what: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
