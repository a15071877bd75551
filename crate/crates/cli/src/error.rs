use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] sigmalat_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    /// A report file handed to `report-diff` could not be read or parsed.
    #[error("{}: {message}", path.display())]
    Report { path: PathBuf, message: String },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for a cap, 4 for unreadable reports, 5 otherwise.
    pub fn exit_code(&self) -> u8 {
        use sigmalat_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(E::Parse { .. } | E::InvalidSigma(_) | E::InvalidPermutation(_)) => 2,
            CliError::Engine(E::CapExceeded { .. }) => 3,
            CliError::Report { .. } => 4,
            CliError::Engine(_) | CliError::Io { .. } => 5,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
