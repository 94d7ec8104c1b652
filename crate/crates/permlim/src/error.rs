use thiserror::Error;

/// Library-wide error type.
///
/// The variants are grouped by how callers are expected to react: bad
/// arguments, size/feasibility guards, and validation failures. The CLI
/// maps these groups onto distinct exit codes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed input or incompatible argument combination.
    #[error("argument error: {0}")]
    Argument(String),

    /// Input could not be parsed in one of the supported text formats.
    #[error("parse error: {0}")]
    Parse(String),

    /// A configurable size guard was exceeded.
    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// The requested computation is infeasible for the given sizes.
    #[error("infeasible: {0}")]
    Feasibility(String),

    /// A structural validation failed (weighted-permutation axioms,
    /// limit-permutation axioms).
    #[error("validation failed: {0}")]
    Validation(String),

    /// Tied sample coordinates where distinct values are required.
    #[error("tie between indices {i} and {j} in the {coordinate} coordinates")]
    Tie {
        coordinate: &'static str,
        i: usize,
        j: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }

    pub fn feasibility(msg: impl Into<String>) -> Self {
        Error::Feasibility(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
