use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear map is singular")]
    Singular,

    #[error("bracket fails the Jacobi identity: {0}")]
    NotLie(String),

    #[error("linear map is not a Lie algebra morphism: {0}")]
    NotMorphism(String),

    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for failures caused by malformed input rather than by
    /// mathematically inadmissible data.
    pub fn is_schema(&self) -> bool {
        matches!(self, Error::Schema { .. })
    }
}
