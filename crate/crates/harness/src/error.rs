use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: field `{field}`: {message}")]
    Schema {
        path: PathBuf,
        field: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Validation {
        path: PathBuf,
        source: torifan_core::Error,
    },
    #[error("catalog entry {name}: {reason}")]
    Catalog { name: String, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("no ample class on the resolution-{resolution} grid of {variety}")]
    EmptyGrid { variety: String, resolution: u32 },
    #[error("resolution must be at least 1")]
    InvalidResolution,
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error(transparent)]
    Core(#[from] torifan_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code: 1 for a failed verification, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Assertion(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
