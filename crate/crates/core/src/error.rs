use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size error: {0}")]
    Size(String),

    #[error("index error: {0}")]
    Index(String),

    /// A precondition on an argument was violated (non-Hermitian input,
    /// probability outside [0, 1], wrong gate support, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("{0}")]
    Usage(String),

    /// `--help` / `--version` output; not a failure.
    #[error("{0}")]
    Help(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn validation(field: &str, msg: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            message: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Help(_) => 0,
            Error::Io { .. } => 3,
            Error::Usage(_) | Error::Validation { .. } => 2,
            // Internal contract failures surface as verification-class errors.
            Error::Size(_) | Error::Index(_) | Error::Contract(_) => 1,
        }
    }
}
