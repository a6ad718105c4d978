use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the simulators, pricers and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument is outside the mathematical domain of an operation
    /// (non-positive gamma rate, dilogarithm argument above one, evaluation
    /// outside the region where a moment generating function exists, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A run configuration is malformed or inconsistent.
    #[error("config error: {0}")]
    Config(String),

    /// Failure while reading or writing files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
