use rickart_core::LabError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] LabError),

    #[error("cache: {0}")]
    Cache(String),
}

impl HarnessError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(e) if e.is_resource_limit() => 3,
            HarnessError::Core(LabError::Consistency(_)) => 1,
            _ => 2,
        }
    }
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;
