use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: n = {n} is above the configured maximum {max}")]
    Capacity { n: u64, max: u64 },

    /// Two graphs that must share a vertex set do not.
    #[error("vertex set mismatch: {0}")]
    Mismatch(String),

    #[error("no biadjacency layout: {0}")]
    Layout(String),

    #[error("search budget exhausted after {expanded} expansions")]
    Budget { expanded: u64 },

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("{}:{line}: {message}", path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "<input>".into()))]
    Parse {
        path: Option<PathBuf>,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures caused by the filesystem rather than by arguments.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Csv(_))
    }
}
