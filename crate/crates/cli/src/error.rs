use std::path::PathBuf;

use thiserror::Error;

/// Tool errors; all of them exit with status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("unknown family {0:?} (expected paraboloid, flat-cone, sphere, plane or rotational:<preset>)")]
    UnknownFamily(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("report has no series {0:?}")]
    MissingSeries(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(conebound::Error),
}

impl From<conebound::Error> for CliError {
    fn from(e: conebound::Error) -> Self {
        match e.root() {
            conebound::Error::UnknownFamily(id) => CliError::UnknownFamily(id.clone()),
            _ => CliError::Core(e),
        }
    }
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
