use thiserror::Error;
use twisted_calculus::AlgebraError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("{0}")]
    Input(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn parse(pos: usize, message: impl Into<String>) -> Self {
        CliError::Parse { column: pos + 1, message: message.into() }
    }

    /// Input and parse problems exit with 2; failed checks are reported separately with 1.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type CliResult<T> = Result<T, CliError>;
