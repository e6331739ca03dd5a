use std::path::PathBuf;

use crate::channel::LinkId;

/// Errors raised anywhere in the simulator.
///
/// The CLI maps [`Error::Config`] to exit code 1 and everything else to 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: u64,
        msg: String,
    },

    #[error("data error: {0}")]
    Data(String),

    #[error("reciprocity violation on {link} at t={time_ms} ms: {forward} dB vs {reverse} dB")]
    Reciprocity {
        link: LinkId,
        time_ms: u64,
        forward: f64,
        reverse: f64,
    },

    #[error("time {t_ms} ms outside trace span [0, {duration_ms})")]
    Bounds { t_ms: u64, duration_ms: u64 },

    #[error("topology error: {0}")]
    Topology(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined result: {0}")]
    Undefined(String),

    #[error("accounting error: {0}")]
    Accounting(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the user's configuration rather than by data.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
