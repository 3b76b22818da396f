use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while loading data, validating inputs or computing metrics.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("missing value in column `{column}` at row {row}")]
    MissingValue { column: String, row: usize },

    #[error("column `{column}` declared numerical but value `{value}` at row {row} does not parse as a finite number")]
    KindConflict {
        column: String,
        row: usize,
        value: String,
    },

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown level `{level}` in categorical column `{column}`")]
    UnknownLevel { column: String, level: String },

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("model error: {0}")]
    Model(String),
}

impl EvalError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        EvalError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = EvalError> = std::result::Result<T, E>;
