use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex {vertex} (graph has {n} vertices)")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("{what}: size {actual} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("improper precoloring: vertices {0} and {1} are adjacent and share color {2}")]
    ImproperPrecoloring(usize, usize, u64),

    #[error("ordering is not consistent with the precoloring: vertex {unprecolored} precedes every vertex of color {color}")]
    InconsistentOrdering { unprecolored: usize, color: u64 },

    #[error("vertex {0} is not precolored")]
    NotPrecolored(usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("forced edges conflict: {0}")]
    ForcedEdgeConflict(String),

    #[error("missing coordinate for variable {0}")]
    MissingCoordinate(String),

    #[error("invalid clique family: {0}")]
    InvalidCliqueFamily(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid JSON: {0}")]
    Json(String),
}
