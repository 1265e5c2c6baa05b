use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("not an almost embedding: faces {left:?} and {right:?} meet")]
    NotAlmostEmbedding { left: Vec<u32>, right: Vec<u32> },
    #[error("not an embedding: {0}")]
    NotEmbedding(String),
    #[error("retry budget exhausted: {0}")]
    RetryBudget(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
