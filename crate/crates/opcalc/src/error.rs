use thiserror::Error;

/// Everything that makes a command fail before any identity is checked.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] opcalc_core::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn format(msg: impl Into<String>) -> Self {
        CliError::Format(msg.into())
    }
}
