use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("edge {edge} has unknown endpoint `{label}`")]
    UnknownEndpoint { edge: EdgeId, label: String },
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("component {{{}}} contains an odd number of terminals", .component.join(", "))]
    OddTerminalComponent { component: Vec<String> },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` belongs to more than one contracted set")]
    OverlappingSets(String),
    #[error("contracted set is empty")]
    EmptySet,
    #[error("edge id {0} does not belong to the graph")]
    ForeignEdgeId(EdgeId),
    #[error("label `{0}` already in use")]
    LabelCollision(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("brute force limited to {limit} edges, graph has {edges}")]
    TooLarge { edges: usize, limit: usize },
    #[error("no join exists for the terminal set")]
    NoJoinExists,
    #[error("edge set is not a minimum join")]
    NotMinimumJoin,
    #[error("endpoints coincide")]
    SameVertex,
    #[error("vertices `{0}` and `{1}` lie in different components")]
    Disconnected(String, String),
    #[error("graft is not primal with respect to `{0}`")]
    NotPrimal(String),
    #[error("`{0}` is not in the level-zero part of the root's initial component")]
    NotInA(String),
    #[error("vertex set is not extreme")]
    NotExtreme,
    #[error("vertex set is not a maximal bipartitic extreme set")]
    NotMaximalExtreme,
    #[error("vertex set is not combic for the join")]
    NotCombic,
    #[error("illegal fringe attachment: {0}")]
    IllegalAttachment(String),
    #[error("graft is not a comb: {0}")]
    NotComb(String),
    #[error("tooth `{0}` is not primal at its root")]
    ToothNotPrimal(String),
    #[error("bad attachment: {0}")]
    BadAttachment(String),
    #[error("contraction does not recover the skeleton comb: {0}")]
    ContractionMismatch(String),
    #[error("terminal rule violated: {0}")]
    TerminalRuleViolation(String),
    #[error("property `{property}` violated: {detail}")]
    Violation {
        property: &'static str,
        detail: String,
    },
}

impl Error {
    pub(crate) fn violation(property: &'static str, detail: impl Into<String>) -> Self {
        Error::Violation {
            property,
            detail: detail.into(),
        }
    }
}

/// Returns a [`Error::Violation`] when `cond` is false.
macro_rules! ensure_property {
    ($cond:expr, $property:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::violation($property, format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure_property;
