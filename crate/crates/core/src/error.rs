use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("parse error on line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("graph is not representable in graph6: {0}")]
    Unrepresentable(String),

    #[error("vertex {vertex} would exceed degree 3")]
    DegreeExceeded { vertex: usize },

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("edge {edge} out of range for a graph with {size} edges")]
    EdgeOutOfRange { edge: usize, size: usize },

    #[error("not a connected cubic graph: {0}")]
    NotCubic(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{0}")]
    InvalidInput(String),

    #[error("too large for brute force ({what} = {value}, cap {cap}); use decomposition")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("witness check failed: {0}")]
    WitnessMismatch(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
