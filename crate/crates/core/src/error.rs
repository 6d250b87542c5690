use crate::graph::VertexId;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid vertex cover: {0}")]
    InvalidCover(String),

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} refuses graphs with more than {limit} vertices (got {n})")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("kernel bound violated: {0}")]
    BoundViolation(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("trace line {line}: {message}")]
    Trace { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
