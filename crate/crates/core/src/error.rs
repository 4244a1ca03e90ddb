use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported genus {genus}: {reason}")]
    Genus { genus: usize, reason: &'static str },

    #[error("unknown curve label `{0}`")]
    UnknownLabel(String),

    #[error("index {index} out of range for factorization of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("monodromy is not the identity (checked at homology level); closed-manifold invariants are undefined")]
    NotIdentity,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("catalog entry `{name}` failed verification: {reason}")]
    Verification { name: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
