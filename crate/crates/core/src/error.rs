use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An improper or oscillatory integral failed its convergence criterion.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// The requested integral oscillates without a limit.
    #[error("oscillatory integral: {0}")]
    OscillatoryIntegral(String),
    /// Bisection was asked to search an interval without a sign change.
    #[error("root not bracketed: {0}")]
    RootNotBracketed(String),
    /// Result exceeds the representable range of `f64`.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
