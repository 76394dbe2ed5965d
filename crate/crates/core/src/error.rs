use thiserror::Error;

/// Failure modes shared by every evaluator and classifier in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain (non-positive k, x on the wrong side of 1/R, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Result would leave binary64 range, or the conjugacy coordinate left the representable window.
    #[error("overflow: {0}")]
    Overflow(String),
    /// Operation called outside the regime it is defined for.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A search that is guaranteed to terminate did not.
    #[error("internal failure: {0}")]
    Internal(String),
    /// Malformed request (unknown suite name, zero trials, ...).
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
