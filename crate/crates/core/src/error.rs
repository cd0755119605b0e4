use thiserror::Error;

/// Errors raised by instance construction, evaluation, search and ingestion.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("chromosome has {found} open facilities, instance requires p = {expected}")]
    OpenCount { expected: usize, found: usize },

    #[error("client {client} has no open facility among its first {width} nearest sites")]
    NoOpenFacility { client: usize, width: usize },

    #[error("variable z{var} is out of range for {m} facilities")]
    VariableOutOfRange { var: usize, m: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("instance too large for exact oracle: C(m, p) = {subsets} exceeds budget {budget}")]
    TooLargeForExact { subsets: String, budget: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("disconnected graph: vertex {to} is unreachable from vertex {from}")]
    DisconnectedGraph { from: usize, to: usize },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
