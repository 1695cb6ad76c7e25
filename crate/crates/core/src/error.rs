use thiserror::Error;

/// Errors raised across the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A family or graph was requested with an impossible parameter combination.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An operation was called outside its contract (e.g. deleting a missing edge).
    #[error("usage error: {0}")]
    Usage(String),

    /// A quantity is undefined for the given input (e.g. average over no colorings).
    #[error("domain error: {0}")]
    Domain(String),

    /// A guardrail or capacity limit refused the computation.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Usage(_) | Error::Parse { .. } | Error::Io(_) => 1,
            Error::Domain(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
