use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("not a cograph: vertices {0:?} induce a P4")]
    NotCograph([usize; 4]),
    #[error("not a threshold graph")]
    NotThreshold,
    #[error("not a trivially perfect graph")]
    NotTriviallyPerfect,
    #[error("invalid cotree: {0}")]
    InvalidCotree(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertices {x} and {y} are not at distance two")]
    NotDistanceTwo { x: usize, y: usize },
    #[error("graph has no universal vertex")]
    NoUniversalVertex,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is an absolute retract; there is no counterexample")]
    AlreadyAbsolute,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid 3-partition instance: {0}")]
    InvalidInstance(String),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
