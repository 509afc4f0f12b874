use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] quancorr::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("circuit and direct witness modes differ by {max_deviation:e} (limit {limit:e})")]
    Invariant { max_deviation: f64, limit: f64 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for optimizer failure, 4 for a failed cross-check.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(quancorr::Error::OptimizerFailure { .. }) => 3,
            HarnessError::Core(_) | HarnessError::Config(_) => 2,
            HarnessError::Invariant { .. } => 4,
            HarnessError::Io { .. } | HarnessError::Csv(_) | HarnessError::Json(_) => 1,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
