use thiserror::Error;

use crate::singular::Regime;

/// Errors raised across the library. Variants map onto CLI exit codes via
/// [`Error::is_precondition`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at x = {0}")]
    Pole(f64),

    #[error("cancellation: {0}")]
    Cancellation(String),

    #[error("accuracy loss: {0}")]
    AccuracyLoss(String),

    #[error("overflow while evaluating {0}")]
    Overflow(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("operation needs regime {expected}, problem is {found}")]
    Regime { expected: String, found: Regime },

    #[error("branch unavailable: {0}")]
    BranchUnavailable(String),

    #[error("no level: {0}")]
    NoLevel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root bracketing failed: {0}")]
    Bracketing(String),

    #[error("mismatched inputs: {0}")]
    Mismatch(String),
}

impl Error {
    pub(crate) fn regime(expected: impl Into<String>, found: Regime) -> Self {
        Error::Regime {
            expected: expected.into(),
            found,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by the caller's input rather than numerics.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::InvalidProblem(_)
                | Error::Regime { .. }
                | Error::BranchUnavailable(_)
                | Error::NoLevel(_)
                | Error::Precondition(_)
                | Error::Mismatch(_)
                | Error::Pole(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
