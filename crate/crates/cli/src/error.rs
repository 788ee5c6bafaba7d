use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid declaration `{name}`: {message}")]
    Validation { name: String, message: String },
    #[error("task {index} ({op}) failed: {message}")]
    Task { index: usize, op: String, message: String },
    #[error("unknown suite `{0}` (expected one of: algebra, representation, geometry, sheaf, appendixB)")]
    UnknownSuite(String),
}

impl CliError {
    pub fn validation(name: &str, message: impl ToString) -> Self {
        CliError::Validation { name: name.to_string(), message: message.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
