use thiserror::Error;

/// Errors produced by group construction, graph queries and the verification
/// pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("cannot parse cycle notation {input:?}: {reason}")]
    CycleParse { input: String, reason: String },

    #[error("group closure exceeded the order cap of {cap} elements")]
    OrderCapExceeded { cap: usize },

    #[error("m = {m} exceeds the subset-enumeration cap of {cap}")]
    SubsetCapExceeded { m: usize, cap: usize },

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown class {0:?}")]
    UnknownClass(String),

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
