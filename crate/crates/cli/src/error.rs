use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Core(#[from] btforge_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn input(path: &str, message: impl ToString) -> Self {
        CliError::Input {
            path: path.to_owned(),
            message: message.to_string(),
        }
    }
}

/// Bad flag values surface from core as invalid parameters; report them as usage errors.
pub fn param<T>(r: btforge_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        btforge_core::Error::InvalidParameter(m) => CliError::Usage(m),
        other => CliError::Core(other),
    })
}
