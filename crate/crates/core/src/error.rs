use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("vertex id {id} out of range for a tree on {n} vertices")]
    BadVertexId { id: usize, n: usize },

    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("seed vertex {vertex} has degree {degree}, internal vertices must have degree {expected}")]
    SeedViolation {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("model would have {predicted} vertices, above the cap of {cap}")]
    SizeCap { predicted: String, cap: usize },

    #[error("random walk cannot leave an isolated vertex")]
    IsolatedVertex,

    #[error("first-passage system could not be solved: {0}")]
    SolveFailure(String),

    #[error("scaling fit needs at least 3 points, got {0}")]
    InsufficientPoints(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
