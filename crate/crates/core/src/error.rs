use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid node id {node} (graph has {node_count} nodes)")]
    InvalidNode { node: NodeId, node_count: usize },

    #[error("invalid edge {{{0}, {1}}}: {2}")]
    InvalidEdge(NodeId, NodeId, &'static str),

    #[error("edge {{{0}, {1}}} already present")]
    DuplicateEdge(NodeId, NodeId),

    #[error("edge {{{0}, {1}}} not present")]
    MissingEdge(NodeId, NodeId),

    #[error("invalid weight {weight} on edge {{{u}, {v}}}")]
    InvalidWeight { u: NodeId, v: NodeId, weight: u64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("closed neighborhoods of {{{0}, {1}}} are not mutually reachable")]
    DisconnectedNeighborhood(NodeId, NodeId),

    #[error("blow-up size {q} exceeds cap {cap}")]
    BlowUpTooLarge { q: usize, cap: usize },

    #[error("value does not fit the requested scalar type")]
    ScalarRange,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("enumeration over {q} items refused (bound {bound})")]
    EnumerationRefused { q: usize, bound: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported variant: {0}")]
    UnsupportedVariant(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("randomized search exhausted its retries: {0}")]
    RetryExhausted(String),

    #[error("search budget exceeded: {needed} candidate sets > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
