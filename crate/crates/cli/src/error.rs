use thiserror::Error;

use crate::dsl::DslError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Dsl(#[from] DslError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Library(#[from] shpoisson::Error),
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type CliResult<T> = Result<T, CliError>;
