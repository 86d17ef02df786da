use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The input is well-typed but unusable (pole in the disk, short series, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An iteration or quadrature did not reach its tolerance.
    #[error("numeric failure: {message} (best residual {residual:e})")]
    Numeric { message: String, residual: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, residual: f64) -> Self {
        Error::Numeric {
            message: msg.into(),
            residual,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
