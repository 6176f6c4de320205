//! Error type shared by the whole crate.
//!
//! Construction and verification functions return `Result<T>`; checks that
//! merely *report* failures (axiom checkers) return an `Ok` report instead,
//! reserving errors for inputs that are unusable (wrong shapes, mixed
//! fields, unmet preconditions).

/// Everything that can go wrong across the library, CLI included.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two operands live over different ground fields.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// Dimensions or index ranges don't line up.
    #[error("shape error: {0}")]
    ShapeError(String),

    /// An operation that needs a skew bracket got a full (non-skew) table.
    #[error("non-skew input: {0}")]
    NonSkewInput(String),

    /// A construction's base algebra fails its axiom check.
    #[error("unverified algebra: {0}")]
    UnverifiedAlgebra(String),

    /// A construction's base representation fails its law.
    #[error("unverified representation: {0}")]
    UnverifiedRepresentation(String),

    /// The assembled semidirect table failed the defensive skewness fold.
    #[error("semidirect product is not skew: {0}")]
    SemidirectNotSkew(String),

    /// A map claimed as an embedding tensor fails its defining equation.
    #[error("not an embedding tensor: {0}")]
    NotAnEmbeddingTensor(String),

    /// Claimed ET-representation data fails one of its compatibility checks.
    #[error("invalid ET-representation: {0}")]
    InvalidEtRepresentation(String),

    /// A cochain handed to a cocycle-requiring operation isn't a cocycle.
    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    /// Extension data is inconsistent with the base it claims to extend.
    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    /// Section maps fail p∘σ = id.
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),

    /// A pair handed to the deformation builder isn't Nijenhuis.
    #[error("not a Nijenhuis pair: {0}")]
    NotNijenhuis(String),

    /// An internal invariant the library itself guarantees was violated.
    /// Seeing this is a bug in the library, not in the input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// An enumeration would exceed the hard candidate cap (2^20).
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    /// Malformed document, scalar literal, or other unreadable input.
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
