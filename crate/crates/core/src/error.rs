use thiserror::Error;

use crate::space::{EdgeId, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate node id {0}")]
    DuplicateNode(NodeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {0} has non-positive length")]
    NonPositiveLength(EdgeId),
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("offset out of range on edge {0}")]
    OffsetOutOfRange(EdgeId),
    #[error("space is not connected")]
    Disconnected,
    #[error("node {0} has degree 2")]
    DegreeTwo(NodeId),
    #[error("space declared as a tree has a cycle")]
    NotATree,
    #[error("space declared as planar fails the planarity test")]
    NotPlanar,
    #[error("space must have at least one edge")]
    Empty,
    #[error("cannot split at node {0}: degree below 2")]
    NotSplittable(NodeId),
    #[error("object {0} is invalid: {1}")]
    InvalidObject(u32, String),
    #[error("duplicate object id {0}")]
    DuplicateObject(u32),
    #[error("operation requires a tree space")]
    RequiresTree,
    #[error("operation requires a planar space")]
    RequiresPlanar,
    #[error("inconsistent coloring: {0}")]
    InconsistentColoring(String),
    #[error("brute-force limit exceeded: {0} objects > {1}")]
    TooLarge(usize, usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
