use std::path::PathBuf;

use sspforge::SspError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] SspError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {msg}", path.display())]
    Parse { path: PathBuf, msg: String },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// 2 for unreadable or malformed input, 3 for chains that do not fit
    /// together, 4 when enumeration bounds are hit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(SspError::Capacity(_)) => 4,
            CliError::Core(SspError::Composition(_) | SspError::Unsupported(_)) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, msg: impl ToString) -> Self {
        CliError::Parse { path: path.into(), msg: msg.to_string() }
    }
}
