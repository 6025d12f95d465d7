use thiserror::Error;

/// Errors produced by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A loaded document violates a data-model invariant.
    #[error("validation error: invariant `{invariant}` violated: {detail}")]
    Validation { invariant: String, detail: String },

    /// A document could not be parsed against the schema.
    #[error("parse error: {0}")]
    Parse(String),

    /// A numerical routine could not reach its tolerance.
    #[error("accuracy error: {what} (best estimate {best:e}, error estimate {estimate:e})")]
    Accuracy {
        what: String,
        best: f64,
        estimate: f64,
    },

    /// Required coefficient data is missing.
    #[error("incomplete data: missing coefficients at n = {missing:?}")]
    Incomplete { missing: Vec<u64> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(invariant: &str, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }

    /// Process exit code: 1 domain/validation/parse, 2 accuracy, 3 missing data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Validation { .. } | Error::Parse(_) | Error::Io(_) => 1,
            Error::Accuracy { .. } => 2,
            Error::Incomplete { .. } => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
