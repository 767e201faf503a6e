use thiserror::Error;

use crate::series::Var;

/// Errors raised by the exact series and operator machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: Var, right: Var },

    #[error("{op}: constant term is not invertible")]
    NotInvertible { op: &'static str },

    #[error("{op}: inner series must have zero constant term")]
    NonzeroConstant { op: &'static str },

    #[error("{op}: needs {needed} known coefficients, only {available} available")]
    Truncation {
        op: &'static str,
        needed: usize,
        available: usize,
    },

    #[error("{op}: {reason}")]
    Precondition { op: &'static str, reason: String },

    #[error("malformed noncommutative polynomial: {0}")]
    MalformedShape(String),

    #[error("graded operator has a grade-0 part; geometric inversion is ill-founded")]
    GradeObstruction,

    #[error("divergent t-monomial in integral expansion (exponent {0})")]
    DivergentMonomial(i64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn truncation(op: &'static str, needed: usize, available: usize) -> Self {
        Error::Truncation {
            op,
            needed,
            available,
        }
    }

    pub(crate) fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            reason: reason.into(),
        }
    }
}
