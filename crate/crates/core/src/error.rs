use thiserror::Error;

/// Errors raised by the engine.
///
/// `Input` covers malformed or inconsistent user data, `Precondition` a
/// violated operation contract, `Consistency` an internal invariant that the
/// mathematics guarantees but the computation failed to reproduce.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    /// True for errors caused by the caller's data rather than the engine.
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Json(_) | Error::Precondition(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
