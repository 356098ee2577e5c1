use thiserror::Error;

use crate::graph::Node;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two non-negative integer labels, found {content:?}")]
    Parse { line: usize, content: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{what} needs at least {needed} nodes, got {got}")]
    TooFewNodes {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("self-loop on node {0} cannot be added to a simple graph")]
    SelfLoop(Node),

    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: Node, node_count: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot plant: {0}")]
    Plant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
