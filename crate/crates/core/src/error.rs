use thiserror::Error;

/// Errors produced by graph construction, families, and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCount { labels: usize, n: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {vertex} holds {count} pebbles, a pebbling step needs 2")]
    InsufficientPebbles { vertex: usize, count: u32 },
    #[error("length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex sets overlap at {0}")]
    OverlappingSets(usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a 2-path: {0}")]
    NotTwoPath(String),
    #[error("budget of {budget} configuration checks exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
