use thiserror::Error;

/// Errors produced by constructions, searches and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The graph has an odd cycle; the cycle is given as a closed vertex walk.
    #[error("graph is not bipartite (odd cycle of length {})", .cycle.len())]
    NotBipartite { cycle: Vec<usize> },

    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    /// A constructed object failed its own post-hoc verification. Always a bug.
    #[error("internal verification failure: {0}")]
    VerificationFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
