use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("node index {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("isolated node: inverse-degree moments undefined (node {node})")]
    IsolatedNode { node: usize },

    #[error("graph has no edges")]
    NoEdges,

    #[error("{what} undefined: zero variance")]
    ZeroVariance { what: &'static str },

    #[error("inconsistent degree moments: negative radicand {radicand}")]
    InconsistentMoments { radicand: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("rewire precondition violated: {0}")]
    RewirePrecondition(String),

    #[error("degree sequence is not graphical")]
    NonGraphical,

    #[error("requested {k} seeds but graph has only {node_count} nodes")]
    TooManySeeds { k: usize, node_count: usize },

    #[error("seed selection exhausted {rounds} rounds with {found} of {k} seeds")]
    RoundsExhausted { k: usize, found: usize, rounds: usize },

    #[error("power iteration did not converge after {iterations} iterations (estimate {estimate}, residual {residual:e})")]
    NoConvergence { estimate: f64, residual: f64, iterations: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
