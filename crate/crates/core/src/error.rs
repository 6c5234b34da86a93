use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function (or too close to a pole).
    #[error("domain error: {0}")]
    Domain(String),
    /// A series or quadrature did not reach its tolerance within its iteration cap.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// A requested variant is declared but not computable.
    #[error("unsupported variant: {0}")]
    Unsupported(String),
    /// An intermediate exponential would leave the representable range.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn convergence(msg: impl Into<String>) -> Error {
    Error::Convergence(msg.into())
}
