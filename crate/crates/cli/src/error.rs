use std::path::PathBuf;

use thiserror::Error;

/// Failures of a command, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] lieharm::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 1 for validation or domain failures, 2 for I/O and parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Write { .. } | Self::Parse(_) => 2,
            Self::Domain(_) | Self::Failed(_) => 1,
        }
    }
}
