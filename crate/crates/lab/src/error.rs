use std::path::PathBuf;

use crate::exit;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Numeric(#[from] symfact::Error),
    #[error("{0}")]
    Usage(String),
}

impl LabError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        LabError::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }

    /// Exit code the binary reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Numeric(symfact::Error::Usage(_))
            | LabError::Numeric(symfact::Error::Domain(_))
            | LabError::Usage(_) => exit::USAGE,
            LabError::Numeric(_) => exit::NUMERICAL,
            LabError::Io { .. } | LabError::Parse { .. } | LabError::Csv(_) => exit::USAGE,
        }
    }
}
