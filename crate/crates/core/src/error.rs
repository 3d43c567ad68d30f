use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid base graph: {0}")]
    InvalidBase(String),
    #[error("vertex budget exceeded: need {needed} vertices, budget is {budget}")]
    VertexBudget { needed: u128, budget: usize },
    #[error("clause budget exceeded: need more than {budget} clauses")]
    ClauseBudget { budget: usize },
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("{{{i},{j}}} is not an edge of the base graph")]
    NotABaseEdge { i: usize, j: usize },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("pattern expansion: {0}")]
    Pattern(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
