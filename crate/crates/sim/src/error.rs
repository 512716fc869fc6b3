use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    /// A config field is missing, malformed or out of range.
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Model(#[from] nearfield_core::Error),
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed {what} in {}: {message}", path.display())]
    Format {
        what: &'static str,
        path: PathBuf,
        message: String,
    },
    #[error("result table is empty; nothing written")]
    EmptyTable,
}

impl SimError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        SimError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SimError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 for configuration problems, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Config { .. } | SimError::Model(_) => 2,
            SimError::Io { .. } | SimError::Format { .. } | SimError::EmptyTable => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, SimError>;
