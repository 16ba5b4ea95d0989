use thiserror::Error;

/// Errors raised by graph construction and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph disconnected: {components} components")]
    Disconnected { components: usize },

    #[error("unknown named graph `{0}`")]
    UnknownGraph(String),

    #[error("`{name}` expects {expected} parameter(s), got {got}")]
    Arity {
        name: String,
        expected: &'static str,
        got: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gamma must be nonzero")]
    ZeroGamma,

    #[error("vertex {0} has zero degree")]
    ZeroDegree(usize),

    #[error("vertex degrees have mixed signs")]
    MixedDegreeSigns,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("exact path unavailable: {0}")]
    ExactPathUnavailable(String),

    #[error("vertices {0} and {1} are not twins")]
    NotTwins(usize, usize),

    #[error("vertices {0} and {1} are not strongly cospectral")]
    NotStronglyCospectral(usize, usize),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("numerical verification failed: {0}")]
    Verification(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
