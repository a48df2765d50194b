use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("partition {partition} is not in {family}")]
    NotInFamily { partition: String, family: String },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("truncation bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),

    #[error("sequence is not {kind} for k = {k}")]
    NotJagged { kind: &'static str, k: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
