use thiserror::Error;

use crate::cancellative::Violation;
use crate::hypergraph::{Pair, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("repeated vertex in {0}")]
    RepeatedVertex(String),
    #[error("vertex universes differ ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("non-disjoint parts")]
    NonDisjointParts,
    #[error("parts do not partition the vertex set")]
    NotAPartition,
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("not cancellative: {0}")]
    NotCancellative(Violation),
    #[error("shadow-not-contained: pair {0} is covered by H but missing from G")]
    ShadowNotContained(Pair),
    #[error("cancellativity-violation: {0}")]
    CancellativityViolation(Violation),
    #[error("not-a-clique: {0:?}")]
    NotAClique(Vec<VertexId>),
    #[error("invalid clique expansion: {0}")]
    InvalidExpansion(String),
    #[error("graph is not {0}-partite")]
    NotKPartite(usize),
    #[error("no STS exists on {0} points (need k = 1 or 3 mod 6)")]
    NoStsExists(usize),
    #[error("not a Steiner triple system: {0}")]
    NotSts(String),
    #[error("part vector has length {got}, base has {expected} points")]
    LengthMismatch { expected: usize, got: usize },
    #[error("triple system is not the stated blowup")]
    NotTheBlowup,
    #[error("STS catalog unavailable: {0}")]
    CatalogUnavailable(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    /// A statement that must hold on every instance failed.
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

impl Error {
    /// True for errors raised by budget guards and time limits.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}
