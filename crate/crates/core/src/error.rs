use thiserror::Error;

use crate::graph::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unresolved references, duplicate ids, wrong vector lengths.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph violates {} decorated-graph condition(s): {}", .0.len(), render(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("operation requires a {expected} mode graph")]
    WrongMode { expected: &'static str },

    #[error("graph is not a main graph")]
    NotMain,

    #[error("formula input {index} ({tag}) is not a main graph")]
    NotMainInput { index: usize, tag: String },

    #[error("graph is not tropically feasible")]
    NotFeasible,

    #[error("kernel has dimension {found}, expected {expected}")]
    KernelDimension { expected: usize, found: usize },

    #[error("graph does not have the basic bipartite shape: {0}")]
    NotBasicShape(String),

    #[error("slope {0} is zero")]
    ZeroSlope(&'static str),

    #[error("enumeration bounds rejected: {0}")]
    Bounds(String),

    /// An identity that holds by construction failed; indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

fn render(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
