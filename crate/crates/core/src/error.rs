use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("duplicate point at index {index} (first seen at index {first})")]
    DuplicatePoint { index: usize, first: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("origin is not an interior point; separating halfspace {normal:?} . x <= {offset}")]
    OriginNotInterior { normal: Vec<String>, offset: String },

    #[error("dimension {dim} exceeds the exact-volume limit {max}; use a Monte Carlo estimate instead")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
