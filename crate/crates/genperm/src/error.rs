use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by graph/cover construction, metric evaluation, and the
/// experiment procedures. Argument-level problems (bad sizes, bad flags) use
/// [`Error::InvalidParameter`]; everything else is a named contract violation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("node id {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("empty node set")]
    EmptyNodeSet,

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components); rerun per component")]
    Disconnected { components: usize },

    #[error("cover is overlapping where a disjoint partition is required")]
    OverlappingCover,

    #[error("vertex {0} has degree 0")]
    IsolatedVertex(usize),

    #[error("vertex {vertex} is not a member of community {community}")]
    NotInCommunity { vertex: usize, community: usize },

    #[error("cover has no communities")]
    EmptyCover,

    #[error("covers are defined over different node universes ({left} vs {right} nodes)")]
    NodeUniverseMismatch { left: usize, right: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no eligible swap pair found after {attempts} attempts")]
    NoEligiblePair { attempts: usize },

    #[error("no node belongs to two or more communities")]
    NoOverlappingNode,

    #[error("layer {layer} is empty at removal fraction {x}")]
    EmptyLayer { layer: usize, x: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
