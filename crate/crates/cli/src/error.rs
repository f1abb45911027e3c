use relkin_core::KinematicsError;
use thiserror::Error;

/// Exit code when every gated check passes.
pub const EXIT_PASS: i32 = 0;
/// Exit code when some gated residual exceeds its tolerance.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage and precondition errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("precondition violated: {0}")]
    Precondition(#[from] KinematicsError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
