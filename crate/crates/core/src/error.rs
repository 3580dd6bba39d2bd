use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported field degree {0}; expected 1..=16")]
    FieldDegree(u32),

    #[error("value {value} is not an element of GF(2^{degree})")]
    ElementRange { value: u32, degree: u8 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance too large: {what} = {got} exceeds the limit of {limit}")]
    Size {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("no constructive scheme for this graph: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("transmission did not terminate within the budget of {budget} slots")]
    Timeout { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }
}
