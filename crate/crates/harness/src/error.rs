use std::path::PathBuf;

use slweno_core::SolverError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown preset `{0}` (see `slweno list-presets`)")]
    UnknownPreset(String),
    #[error("unknown key `{key}` for preset {preset}")]
    UnknownKey { key: String, preset: String },
    #[error("bad value `{value}` for `{key}`: {reason}")]
    BadValue { key: String, value: String, reason: String },
    #[error("{path}:{line}: {msg}")]
    Manifest { path: PathBuf, line: usize, msg: String },
    #[error("mesh list must double at every entry: {0:?}")]
    MeshList(Vec<usize>),
    #[error("preset {0} has no exact or reference solution")]
    NoReference(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for configuration problems, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => 1,
            Self::Solver(SolverError::Config(_) | SolverError::Grid(_)) => 2,
            Self::Solver(_) => 3,
            _ => 2,
        }
    }
}
