use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of an operation (bad rank, non-dominant weight, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation would exceed a fixed size bound.
    #[error("capacity exceeded: {what} has size {size}, bound is {bound}")]
    Capacity {
        what: String,
        size: usize,
        bound: usize,
    },
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
