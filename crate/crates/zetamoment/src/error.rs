//! Crate-wide error type.

use crate::quadrature::QuadResult;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A series term with a vanishing denominator; distinct from a plain
    /// domain violation because the surrounding formula is otherwise valid.
    #[error("singular term in {op}: {msg}")]
    SingularTerm { op: &'static str, msg: String },

    /// The requested precision could not be certified. Carries the best
    /// value reached together with its honest error estimate; quadrature
    /// failures attach the partial result.
    #[error("precision target of {requested} digits not reached (estimate {estimate})")]
    PrecisionNotReached {
        requested: u32,
        estimate: String,
        best: Option<Box<QuadResult>>,
    },

    /// A malformed textual representation (rational, big real or
    /// zeta-expression serialization).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub fn singular(op: &'static str, msg: impl Into<String>) -> Self {
        Error::SingularTerm { op, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
