use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LtvError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0} is not pi-integral")]
    NotIntegral(String),

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("search bound exceeded: {what} = {value} > {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("truncation at degree {have} cannot certify the supremum; need N >= {suggested}")]
    InsufficientTruncation { have: u64, suggested: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An algebraic identity that the construction guarantees did not hold.
    /// Always indicates a transcription or implementation bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, LtvError>;
