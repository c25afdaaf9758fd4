use alloc::string::String;

use crate::graph::{Node, Violation};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension {0} is outside 1..=20")]
    DimensionOutOfRange(u32),
    #[error("node {0} is outside the graph")]
    NodeOutOfRange(Node),
    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(Node, Node),
    #[error("the two fault sets are identical")]
    IdenticalFaultSets,
    #[error("invalid hypercube-like graph: {0}")]
    InvalidGraph(Violation),
    #[error("the three-round diagnosis needs dimension >= 4, got {0}")]
    DimensionTooSmall(u32),
    #[error("adversary script exhausted after {0} free cells")]
    ScriptExhausted(usize),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("node {node} already takes part in a test in round {round}")]
    RoleConflict { node: Node, round: usize },
    #[error("malformed syndrome: {0}")]
    MalformedSyndrome(String),
    #[error("diagnosis infeasible: {0}")]
    DiagnosisInfeasible(String),
}

/// Coarse classification used to map errors onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Contract,
    Adversary,
    Infeasible,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionOutOfRange(_)
            | Error::NodeOutOfRange(_)
            | Error::IdenticalFaultSets
            | Error::InvalidGraph(_)
            | Error::DimensionTooSmall(_)
            | Error::MalformedSyndrome(_) => ErrorKind::Input,
            Error::NotAdjacent(..) | Error::RoleConflict { .. } => ErrorKind::Contract,
            Error::ScriptExhausted(_) => ErrorKind::Adversary,
            Error::ResourceBound(_) => ErrorKind::Resource,
            Error::DiagnosisInfeasible(_) => ErrorKind::Infeasible,
        }
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceBound(msg.into())
    }
}
