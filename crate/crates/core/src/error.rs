use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("requested {requested} {what}, which exceeds the configured cap of {cap}")]
    TooLarge {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid list assignment: {0}")]
    InvalidLists(String),

    #[error("invalid broadcast tree: {0}")]
    InvalidTree(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("node {node} is out of range for a graph of {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("malformed instance file: {0}")]
    Instance(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
