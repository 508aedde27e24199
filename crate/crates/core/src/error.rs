use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(Complex64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("tau = {0} is singular (1 + tau^2 = 0)")]
    SingularTau(Complex64),
    #[error("series did not converge within {terms} terms: {context}")]
    NonConvergence { terms: usize, context: String },
}

impl Error {
    /// True for errors caused by invalid input (as opposed to numerical failure).
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::NonConvergence { .. })
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn index(msg: impl Into<String>) -> Self {
        Error::Index(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
