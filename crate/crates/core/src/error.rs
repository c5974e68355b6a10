use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the set on which an operation is defined
    /// (non-finite values, non-positive logarithm arguments, smooth-pipe
    /// inputs to a normalized path, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The reference fixed-point iteration did not reach the requested
    /// tolerance. Carries the offending point and the last iterate.
    #[error(
        "no convergence at Re={re}, eps/D={rel_rough} after {iterations} iterations \
         (last x={last_x}, step={residual:e})"
    )]
    NonConvergence {
        re: f64,
        rel_rough: f64,
        iterations: usize,
        last_x: f64,
        residual: f64,
    },

    #[error("unknown scheme id `{0}`")]
    UnknownScheme(String),

    /// Invalid scheme composition, grid, config value or CLI argument.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
