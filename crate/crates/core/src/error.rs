use thiserror::Error;

use crate::hypergraph::{EdgeId, Vertex};

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge:?} appears more than once")]
    DuplicateEdge { edge: Vec<Vertex> },

    #[error("edge {edge:?} has {found} distinct vertices, expected {expected}")]
    BadArity {
        edge: Vec<Vertex>,
        expected: usize,
        found: usize,
    },

    #[error("vertex {vertex} is out of range for a host on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("requested {requested} edges but only {available} exist")]
    TooManyEdges { requested: u128, available: u128 },

    #[error("shadow size {k} must satisfy 1 <= k < r (r = {r})")]
    BadShadowSize { k: usize, r: usize },

    #[error("no partite subgraph reached {target:.2} edges in {attempts} attempts")]
    PartitionRetryExhausted { attempts: usize, target: f64 },

    #[error("search space of size {size} exceeds the cap {cap}")]
    TooLarge { size: u128, cap: u128 },

    #[error("m_r is undefined for hosts with fewer than two edges")]
    Undefined,

    #[error("edge id {0} does not exist in the host")]
    UnknownEdgeId(EdgeId),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("codegree requirement violated: {codegree} < {required} (shadow {sigma:?})")]
    CodegreeTooSmall {
        sigma: Option<Vec<Vertex>>,
        codegree: usize,
        required: usize,
    },

    #[error("no graph on {vertices} vertices has all degrees in {{t, t-1}} for t = {t}")]
    TooFewVertices { vertices: usize, t: usize },

    #[error("output exceeded the cap of {cap} items")]
    Truncated { cap: usize },

    #[error("host has {edges} edges, the supersaturation regime needs at least {required:.2}")]
    TooSparse { edges: usize, required: f64 },

    #[error("shadow edge {edge:?} has no extension in the host")]
    DanglingShadow { edge: Vec<Vertex> },

    #[error("container hypothesis fails at j = {j}: Δ_j = {delta} > {bound:.4}")]
    HypothesisViolated { j: usize, delta: u64, bound: f64 },

    #[error("host has more than {cap} cycle copies")]
    TooManyCopies { cap: usize },

    #[error("ground of {ground} elements exceeds the exhaustive verification limit {limit}")]
    GroundTooLargeForVerification { ground: usize, limit: usize },

    #[error("nothing to plot")]
    EmptyInput,

    #[error("budget exhausted: {0}")]
    BudgetExceeded(String),

    #[error("host is not partite with respect to the given partition")]
    NotPartite,

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by exhausted budgets.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::BudgetExceeded(_)
                | Error::Truncated { .. }
                | Error::TooLarge { .. }
                | Error::TooManyCopies { .. }
                | Error::GroundTooLargeForVerification { .. }
                | Error::PartitionRetryExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
