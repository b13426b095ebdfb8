use thiserror::Error;

/// Errors raised by the approximation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A numerical computation could not produce a meaningful result.
    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
