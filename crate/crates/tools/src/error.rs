use std::path::PathBuf;
use std::process::ExitCode;

/// Failures of the command line driver, each mapped to its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("malformed spec file {path}: {reason}")]
    MalformedSpec { path: PathBuf, reason: String },
    #[error("cache {path} does not match this build: {reason}")]
    CacheMismatch { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("computation failed: {0}")]
    Computation(String),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl ToolError {
    pub fn unknown(kind: &'static str, name: impl Into<String>) -> ToolError {
        ToolError::UnknownName { kind, name: name.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> ToolError {
        ToolError::Io { path: path.into(), source }
    }

    /// Exit status; 2 is left to the argument parser for usage errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            ToolError::ChecksFailed { .. } => 1,
            ToolError::UnknownName { .. } => 3,
            ToolError::MalformedSpec { .. } => 4,
            ToolError::CacheMismatch { .. } => 5,
            ToolError::Io { .. } => 6,
            ToolError::Computation(_) => 7,
        }
    }
}

impl From<ToolError> for ExitCode {
    fn from(e: ToolError) -> ExitCode {
        ExitCode::from(e.exit_code())
    }
}
