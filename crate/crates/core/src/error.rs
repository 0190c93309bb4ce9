use thiserror::Error;

use crate::report::Report;
use crate::scalar::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} has not been verified")]
    Unverified(&'static str),

    /// An axiom required by a constructor failed; the report carries the witnesses.
    #[error("rejected: {reason}")]
    Rejected { reason: String, report: Report },

    #[error("span inclusion violated: vector {witness:?} is not in the span of the cocycles")]
    InclusionViolation { witness: Vec<Scalar> },

    #[error("tensor of {requested} entries exceeds the size cap of {cap}")]
    SizeCap { requested: u128, cap: u128 },

    #[error("cochain space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("order mismatch: {0}")]
    OrderMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn rejected(reason: impl Into<String>, report: Report) -> Self {
        Error::Rejected {
            reason: reason.into(),
            report,
        }
    }
}
