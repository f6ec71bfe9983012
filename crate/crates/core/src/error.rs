use std::path::PathBuf;

use thiserror::Error;

/// Every failure the toolkit reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("unknown benchmark function `{0}`")]
    Lookup(String),
    #[error("swap index out of range: {0}")]
    Index(String),
    #[error("tours cover different city sets: {0}")]
    InstanceMismatch(String),
    #[error("instance error: {0}")]
    Instance(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors raised while checking inputs, before any computation.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io { .. } | Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
