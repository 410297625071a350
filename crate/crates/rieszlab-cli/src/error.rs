use std::path::PathBuf;

use thiserror::Error;

/// A configuration document that could not be accepted.
#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid `{field}`: {msg}")]
    Validation { field: String, msg: String },
    #[error("cannot read {path}: {msg}")]
    Read { path: PathBuf, msg: String },
}

impl ConfigError {
    pub(crate) fn invalid(field: &str, msg: impl Into<String>) -> Self {
        ConfigError::Validation { field: field.into(), msg: msg.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lab(#[from] rieszlab::LabError),
}

impl CliError {
    /// Process exit status: 2 for configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}
