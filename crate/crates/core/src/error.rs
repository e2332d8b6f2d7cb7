use thiserror::Error;

/// Errors raised by model construction, coding, and experiment drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// A source model failed construction-time validation.
    #[error("invalid model: {0}")]
    InvalidModel(String),
    /// An input (sequence, rank, codeword, parameter) violates a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The request exceeds an exact-enumeration capacity limit.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
