use thiserror::Error;

/// Errors raised by the core algorithms.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An enumeration or construction would exceed its configured budget.
    #[error("{what}: {count} exceeds budget of {budget}")]
    Budget {
        what: &'static str,
        count: u128,
        budget: u128,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
