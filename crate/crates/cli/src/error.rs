use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line runner; each maps to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown configuration key `{key}`")]
    UnknownKey { key: String },

    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },

    #[error("malformed line {line} in {}: {text}", path.display())]
    Syntax { path: PathBuf, line: usize, text: String },

    #[error("configuration file {} not found", path.display())]
    MissingFile { path: PathBuf },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("run failed ({algorithm}, seed {seed}): {source}")]
    Run {
        algorithm: String,
        seed: u64,
        #[source]
        source: camcover_core::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownKey { .. } | CliError::InvalidValue { .. } | CliError::Syntax { .. } => 1,
            CliError::MissingFile { .. } | CliError::Io { .. } => 2,
            CliError::Run { source, .. } => match source {
                camcover_core::Error::Internal(_) => 3,
                _ => 1,
            },
            CliError::Internal(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<camcover_core::Error> for CliError {
    fn from(e: camcover_core::Error) -> Self {
        match e {
            camcover_core::Error::InvalidParameter { key, reason } => CliError::InvalidValue {
                key: key.to_string(),
                reason,
            },
            camcover_core::Error::Internal(msg) => CliError::Internal(msg),
            other => CliError::InvalidValue {
                key: "deployment".into(),
                reason: other.to_string(),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
