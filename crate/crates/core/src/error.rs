use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set of order {set} does not match graph of order {graph}")]
    OrderMismatch { set: usize, graph: usize },

    #[error("graph is disconnected; connected domination is undefined")]
    Disconnected,

    #[error("order {order} exceeds the brute-force limit of {limit}; {hint}")]
    OrderGuard {
        order: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
