use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("seed vector {index} is numerically dependent on its predecessors (residual norm {residual:e})")]
    DependentSeeds { index: usize, residual: f64 },

    #[error("norm mismatch: state has squared norm {state}, target has squared norm {target}")]
    NormMismatch { state: f64, target: f64 },

    #[error("state is not normalized (squared norm {0})")]
    Unnormalized(f64),

    /// A postcondition of a construction did not hold. Never expected on valid input.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
