use std::io;
use std::path::{Path, PathBuf};

use corpuskit_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const RUNTIME: i32 = 1;
    pub const FORMAT: i32 = 2;
    pub const ARGUMENT: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: CoreError },
    #[error("{}:{line}: {message}", path.display())]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn input(path: &Path, source: CoreError) -> Self {
        CliError::Input {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn format(path: &Path, line: usize, message: impl Into<String>) -> Self {
        CliError::Format {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::RUNTIME,
            CliError::Format { .. } => exit::FORMAT,
            CliError::Usage(_) => exit::ARGUMENT,
            CliError::Input { source, .. } | CliError::Core(source) => match source {
                CoreError::Decode { .. } | CoreError::Format(_) => exit::FORMAT,
                CoreError::InvalidArgument(_) => exit::ARGUMENT,
                CoreError::DegenerateVariance => exit::RUNTIME,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
