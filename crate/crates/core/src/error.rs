use thiserror::Error;

use crate::graph::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(usize, usize),
    #[error("graph with {0} vertices exceeds the supported size")]
    TooLarge(usize),
    #[error("invalid size {size} for family {family:?}")]
    InvalidSize { family: Family, size: usize },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("graph6 input with {0} vertices is not supported (limit 62)")]
    UnsupportedGraph6Size(usize),
    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("weight alpha must be positive, got {0}")]
    NonPositiveAlpha(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("profile of length {len} cannot belong to a graph on {n} vertices")]
    ProfileTooLong { len: usize, n: usize },
    #[error("could not certify {expected} real roots (found {found})")]
    RootsNotCertified { expected: usize, found: usize },
    #[error("tolerance must be positive and finite")]
    BadTolerance,
    #[error("input is not a forest")]
    NotAForest,
    #[error(transparent)]
    Stats(#[from] StatsError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("order {n} outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("worker index {index} out of range for {count} workers")]
    BadShard { index: usize, count: usize },
}
