use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Everything that ends a run early, with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] zerocross::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
        }
    }
}
