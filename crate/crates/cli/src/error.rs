use thiserror::Error;

use crate::exit;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Input(_) => exit::INPUT,
            CliError::Schema(_) => exit::SCHEMA,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

impl From<skolemkit::Error> for CliError {
    fn from(e: skolemkit::Error) -> Self {
        match e {
            skolemkit::Error::Parse { .. } | skolemkit::Error::InvalidArgument(_) => CliError::Input(e.to_string()),
            skolemkit::Error::Schema(_) => CliError::Schema(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
