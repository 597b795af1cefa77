use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid edge list: {0}")]
    EdgeList(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("edge {edge} out of range for a graph with {m} edges")]
    InvalidEdge { edge: usize, m: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not 4-regular: vertex {vertex} has degree {degree}")]
    NotFourRegular { vertex: usize, degree: usize },

    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("budget exceeded: {what} needs {required} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial has degree {degree} but {vars} variables")]
    DegreeMismatch { degree: u32, vars: usize },

    #[error("structural assumption violated: {0}")]
    Structure(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    /// True for errors caused by the caller's input rather than by the
    /// computation itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Graph6 { .. }
                | Error::EdgeList(_)
                | Error::InvalidVertex { .. }
                | Error::InvalidEdge { .. }
                | Error::Disconnected
                | Error::NotFourRegular { .. }
                | Error::NotAdjacent(..)
                | Error::NotPrime(_)
                | Error::NotSquare { .. }
                | Error::Precondition(_)
                | Error::DegreeMismatch { .. }
                | Error::Io { .. }
                | Error::Json(_)
        )
    }
}
