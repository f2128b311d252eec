use thiserror::Error;

use crate::multigraph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("invalid weight for vertex {vertex}: {reason}")]
    InvalidWeight { vertex: VertexId, reason: String },

    #[error("invalid cluster collection: {0}")]
    InvalidClusters(String),

    #[error("invalid theta model: {0}")]
    InvalidModel(String),

    #[error("invalid outgrowth: {0}")]
    InvalidOutgrowth(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {budget} branch nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("component with {size} vertices exceeds the exact search limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("not a c-bond cover: {0}")]
    NotACover(String),

    #[error("inconsistent trace: {0}")]
    InconsistentTrace(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
