use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },

    #[error("no token on vertex {0}")]
    NoToken(VertexId),

    #[error("illegal move {from} -> {to}: not an edge")]
    IllegalMove { from: VertexId, to: VertexId },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unknown handle {0}")]
    InvalidReference(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("state space bound {bound} exceeds cap {cap}")]
    ResourceLimit { bound: u128, cap: u128 },

    /// Variable and clause are 0-based; the message shows them 1-based.
    #[error("flipping x{} falsifies clause c{}", .variable + 1, .clause + 1)]
    IllegalFlip { variable: usize, clause: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
