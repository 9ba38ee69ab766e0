use thiserror::Error;

/// Errors raised by the library.
///
/// The variants line up with the CLI exit codes: domain and precondition
/// violations are caller mistakes, numerical failures are not.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural precondition (containment, mesh geometry, support) failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A singular Fourier symbol would act on a nonzero mean.
    #[error("zero-mode violation: |u_hat(0)| = {mean:.3e} exceeds {threshold:.3e}; pass allow_mean to override")]
    ZeroMode { mean: f64, threshold: f64 },
    /// An iterative or factorization step failed.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
