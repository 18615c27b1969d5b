//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input value is outside its physical or mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested configuration cannot be run (empty feasible set,
    /// violated CFL condition, inconsistent dimensions, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// The simulation produced an inconsistent intermediate value.
    #[error("simulation error at step {step}: {message}")]
    Sim { step: usize, message: String },

    /// Vector or matrix dimensions do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
