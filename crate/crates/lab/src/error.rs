use thiserror::Error;

/// Every variant is a usage or configuration problem (exit status 2).
#[derive(Debug, Error)]
pub enum LabError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Core(#[from] cva_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl LabError {
    pub(crate) fn parse(path: &str, e: &serde_json::Error) -> Self {
        // serde_json appends " at line L column C" to its messages.
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        LabError::Parse { path: path.to_string(), line: e.line(), column: e.column(), message }
    }

    pub(crate) fn invalid(path: &str, message: impl Into<String>) -> Self {
        LabError::Invalid { path: path.to_string(), message: message.into() }
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
