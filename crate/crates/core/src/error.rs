use thiserror::Error;

use crate::linalg::MatrixF;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),

    #[error("degree bound {bound} exceeds the configured cap {cap} ({context})")]
    DegreeBoundExceeded {
        bound: i64,
        cap: usize,
        context: String,
    },

    #[error("unsupported singularity: {0}")]
    UnsupportedSingularity(String),

    #[error("unsupported delta structure: {0}")]
    UnsupportedDeltaStructure(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("system is not integrable: condition for ({first}, {second}) fails")]
    NotIntegrable {
        first: String,
        second: String,
        residual: Box<MatrixF>,
    },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// True for the errors that signal a limitation of the scalar solvers
    /// rather than bad input.
    pub fn is_incompleteness(&self) -> bool {
        matches!(
            self,
            Error::FactorizationIncomplete(_)
                | Error::DegreeBoundExceeded { .. }
                | Error::UnsupportedSingularity(_)
                | Error::UnsupportedDeltaStructure(_)
        )
    }

    /// Prefix the error message with the subproblem it arose in.
    pub fn within(self, context: &str) -> Error {
        match self {
            Error::FactorizationIncomplete(m) => {
                Error::FactorizationIncomplete(format!("{context}: {m}"))
            }
            Error::DegreeBoundExceeded {
                bound,
                cap,
                context: c,
            } => Error::DegreeBoundExceeded {
                bound,
                cap,
                context: format!("{context}: {c}"),
            },
            Error::UnsupportedSingularity(m) => {
                Error::UnsupportedSingularity(format!("{context}: {m}"))
            }
            Error::InternalInconsistency(m) => {
                Error::InternalInconsistency(format!("{context}: {m}"))
            }
            other => other,
        }
    }
}
