use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is not a tree: {0}")]
    NotATree(String),
    #[error("vertex `{0}` must have a strictly positive weight")]
    NonPositiveVertexWeight(String),
    #[error("{what} of `{id}` must be nonnegative")]
    NegativeValue { what: &'static str, id: String },
    #[error("unknown vertex id `{0}`")]
    UnknownVertexId(String),
    #[error("vertex id `{0}` appears more than once")]
    DuplicateVertexId(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("vertex `{0}` is the root and has no parent edge")]
    RootHasNoParentEdge(String),
    #[error("tables were computed for a different tree or problem")]
    TableMismatch,
    #[error("a part must contain at least one vertex")]
    EmptyPart,
    #[error("instance has {actual} vertices, enumeration budget is {limit}")]
    BudgetExceeded { actual: usize, limit: usize },
    #[error("vertex `{0}` is both a required and a forbidden outlier")]
    Precollision(String),
    #[error("graph is not a forest after deleting the required outliers")]
    NotForestAfterDeletion,
    #[error("outlier budget {lambda} is smaller than the {required} required outliers")]
    LambdaTooSmall { lambda: usize, required: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("decision oracle is not monotone in xi: {0}")]
    NonMonotone(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
