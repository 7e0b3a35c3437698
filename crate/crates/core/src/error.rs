use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("self-loop on node {0}")]
    SelfLoop(String),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),

    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    InvalidWeight { u: usize, v: usize, weight: f64 },

    #[error("node id {node} out of range for graph with {node_count} nodes")]
    InvalidNode { node: usize, node_count: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("graph too large for brute force: {nodes} nodes (limit {limit})")]
    GraphTooLarge { nodes: usize, limit: usize },

    #[error("node {u} is not a neighbor of node {v}")]
    NotNeighbor { u: usize, v: usize },

    #[error("node {0} has no neighbors")]
    IsolatedNode(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite activation in layer {layer} ({branch} branch)")]
    NonFiniteActivation { layer: usize, branch: &'static str },

    #[error("non-finite training loss at epoch {epoch}, graph {graph}: {loss}")]
    NonFiniteLoss { epoch: usize, graph: usize, loss: f64 },

    #[error("graph has {edges} edges, model capacity is {capacity}")]
    CapacityExceeded { edges: usize, capacity: usize },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("zero rank variance: all values in an input are identical")]
    ZeroVariance,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
