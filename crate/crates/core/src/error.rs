use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the solver library and the benchmark tooling.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller-side misuse: wrong dimensions, missing cardinality, bad flags.
    #[error("usage error: {0}")]
    Usage(String),

    /// Malformed instance or trace file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed input whose contents violate a model invariant.
    #[error("data error: {0}")]
    Data(String),

    /// The MILP backend failed to produce a usable answer.
    #[error("backend error: {0}")]
    Backend(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn dim(what: &str, expected: usize, got: usize) -> Self {
        Error::Usage(format!("{what}: expected dimension {expected}, got {got}"))
    }
}
