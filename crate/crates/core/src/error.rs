use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("context mismatch: {0}")]
    Context(String),

    #[error("resource limit exceeded: {what} is {requested}, limit {limit}")]
    ResourceLimit {
        what: String,
        limit: u64,
        requested: u64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    /// A runtime consistency check between computed verdicts failed. This is
    /// a bug signal, never an expected outcome.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

impl LabError {
    pub fn resource(what: impl Into<String>, limit: u64, requested: u64) -> Self {
        LabError::ResourceLimit {
            what: what.into(),
            limit,
            requested,
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, LabError::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
