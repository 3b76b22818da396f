use std::path::PathBuf;

use tabeval::EvalError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const IO: i32 = 2;
    pub const METRIC_FAILURE: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::INVALID,
            CliError::Write { .. } => exit::IO,
            CliError::Eval(EvalError::Io { .. }) => exit::IO,
            CliError::Eval(EvalError::Csv(e)) if e.is_io_error() => exit::IO,
            CliError::Eval(_) => exit::INVALID,
        }
    }
}
