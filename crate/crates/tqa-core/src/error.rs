use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid quiver: {0}")]
    Validation(String),

    #[error("operands belong to different algebras")]
    MixedAlgebra,

    #[error("operation requires degree >= 1")]
    DegreeZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("resource limit exceeded while {what} (cap {cap})")]
    ResourceLimit { what: String, cap: usize },

    #[error("operand is not a cocycle in degree {degree}")]
    NotACocycle { degree: usize },

    #[error("invalid class expression: {0}")]
    ClassExpr(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration guards. Exceeding a cap is a clean error, never silent
/// truncation.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Cap on paths / parallel pairs produced per request.
    pub max_paths: usize,
    /// Cap on resolution basis words produced per request.
    pub max_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_paths: 1_000_000,
            max_words: 1_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_paths(&self, count: usize, what: &str) -> Result<()> {
        if count > self.max_paths {
            Err(Error::ResourceLimit {
                what: what.to_string(),
                cap: self.max_paths,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_words(&self, count: usize, what: &str) -> Result<()> {
        if count > self.max_words {
            Err(Error::ResourceLimit {
                what: what.to_string(),
                cap: self.max_words,
            })
        } else {
            Ok(())
        }
    }
}
