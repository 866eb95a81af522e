use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("length mismatch: {left} vertices vs {right} vertices")]
    LengthMismatch { left: usize, right: usize },

    #[error("weights {0} and {1} lie in different blocks")]
    BlockMismatch(String, String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The caller handed the surgery engine a configuration that cannot occur
    /// for valid inputs.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("coefficient overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
