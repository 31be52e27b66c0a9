use std::path::PathBuf;

use thiserror::Error;

/// A malformed row of a shot file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {}", format_rows(.rows))]
    Parse { path: PathBuf, rows: Vec<RowError> },

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("not enough {basis}-basis shots: need at least {needed}, got {got}")]
    InsufficientShots {
        basis: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] depthcert_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_rows(rows: &[RowError]) -> String {
    const SHOWN: usize = 20;
    let mut s = rows
        .iter()
        .take(SHOWN)
        .map(|r| format!("line {}: {}", r.line, r.message))
        .collect::<Vec<_>>()
        .join("; ");
    if rows.len() > SHOWN {
        s.push_str(&format!("; … and {} more", rows.len() - SHOWN));
    }
    s
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 usage, 2 bad data, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}
