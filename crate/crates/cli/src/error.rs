use serde_json::{json, Value};
use thiserror::Error;
use tropweier_core::Error as CoreError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Validation,
    Computation,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Validation => 3,
            ErrorKind::Computation => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Validation => "validation",
            ErrorKind::Computation => "computation",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed {what}: {message}")]
    Format { what: &'static str, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn format(what: &'static str, message: impl Into<String>) -> CliError {
        CliError::Format { what, message: message.into() }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            CliError::Usage(_) => ErrorKind::Usage,
            CliError::Io { .. } | CliError::Format { .. } => ErrorKind::Validation,
            CliError::Core(e) => match e {
                CoreError::CurrentNotConserved
                | CoreError::SingularSystem
                | CoreError::NotEffective
                | CoreError::NonIntegralSlope
                | CoreError::NotQuadratic
                | CoreError::NonGenericLocus
                | CoreError::GenericityRetriesExceeded { .. } => ErrorKind::Computation,
                _ => ErrorKind::Validation,
            },
        }
    }

    /// Short stable identifier, e.g. `DisconnectedGraph`.
    pub fn code(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Io { .. } => "Io".into(),
            CliError::Format { .. } => "Format".into(),
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                debug.chars().take_while(|c| c.is_ascii_alphanumeric()).collect()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind().name(), "code": self.code(), "message": self.to_string() } })
    }
}
