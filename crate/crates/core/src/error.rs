use thiserror::Error;

use crate::graph::{VertexPair, MAX_VERTICES};

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(VertexPair),
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("a vertex pair needs two distinct vertices, got {0} twice")]
    DegeneratePair(usize),
    #[error("{0} is already an edge")]
    AlreadyAnEdge(VertexPair),
    #[error("{0} is not an edge")]
    NotAnEdge(VertexPair),
    #[error("graph is disconnected; {0}")]
    Disconnected(&'static str),
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("vertex set does not separate the graph")]
    NotASeparator,
    #[error("dimension {0} is outside the supported range")]
    DimensionOutOfRange(usize),
    #[error("minor search exhausted its budget of {0} nodes")]
    BudgetExhausted(u64),
    #[error("host has {n} vertices, the limit for this operation is {max}")]
    HostTooLarge { n: usize, max: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error("linkage apparently infeasible: {0}")]
    Infeasible(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
