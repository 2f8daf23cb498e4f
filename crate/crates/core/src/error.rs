use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge list is empty")]
    EmptyInput,

    #[error("node {0} is out of range")]
    NodeOutOfRange(NodeId),

    #[error("node {0} is in both the negative and the positive seed set")]
    OverlappingSeeds(NodeId),

    #[error("seed set is empty")]
    EmptySeeds,

    #[error("requested {requested} nodes but only {available} are eligible")]
    BudgetTooLarge { requested: usize, available: usize },

    #[error("graph has {edges} edges; exact enumeration is capped at {limit}, use Monte Carlo estimation instead")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("{candidates} candidate nodes exceed the exhaustive-check limit of {limit}")]
    TooManyCandidates { candidates: usize, limit: usize },

    #[error("head node {0} is a negative seed")]
    HeadIsNegativeSeed(NodeId),

    #[error("sample for head {0} contains no negative seed")]
    NoNegativeInSample(NodeId),

    #[error("head node {0} has no susceptibility entry")]
    MissingSusceptibility(NodeId),

    #[error("invalid priority: {0}")]
    InvalidPriority(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
