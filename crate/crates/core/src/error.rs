use std::fmt;

use thiserror::Error;

/// Errors raised by the kernel, the evaluators and the monodromy layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(DomainError),

    /// An iterative method did not reach the requested tolerance.
    #[error("no convergence in {method}: {detail} (achieved bound {achieved:.3e})")]
    Convergence {
        method: &'static str,
        detail: String,
        achieved: f64,
    },

    /// No backend is able to handle the request.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainError {
    /// Pole of Gamma or zeta at the given integer.
    Pole { func: &'static str, at: i64 },
    /// An operation restricted to non-integer orders received an integer.
    IntegerOrder { nearest: i64 },
    /// Point lies on (or within eps_cut of) the branch cut [1, inf).
    OnBranchCut,
    /// Evaluation at one of the branch points 0 or 1.
    BranchPoint,
    /// Everything else: message describes the violated precondition.
    Other(String),
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::Pole { func, at } => write!(f, "pole of {func} at {at}"),
            DomainError::IntegerOrder { nearest } => {
                write!(
                    f,
                    "order is the integer {nearest}; a non-integer order is required"
                )
            }
            DomainError::OnBranchCut => write!(f, "on branch cut [1,inf); use jump or --side"),
            DomainError::BranchPoint => write!(f, "evaluation at a branch point"),
            DomainError::Other(msg) => f.write_str(msg),
        }
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(DomainError::Other(msg.into()))
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }

    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence { .. })
    }
}

impl From<DomainError> for Error {
    fn from(e: DomainError) -> Self {
        Error::Domain(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
