use thiserror::Error;

/// Failure modes shared by the symbolic and numeric engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("needs higher order: {0}")]
    NeedsHigherOrder(String),
    #[error("nodal curve: {0}")]
    Nodal(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("too close to a singular point: {0}")]
    Proximity(String),
    #[error("continuation failure: {0}")]
    Continuation(String),
    #[error("structural check failed: {0}")]
    Structural(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
