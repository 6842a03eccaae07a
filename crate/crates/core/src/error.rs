use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra invariant violated: {0}")]
    AlgebraViolation(String),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("radical computation unavailable: {0} (provide a radical annotation)")]
    RadicalUnavailable(String),
    #[error("invalid radical: {0}")]
    InvalidRadical(String),
    #[error("semisimple decomposition failed: {0}")]
    Decomposition(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module homomorphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid complex at degree {degree}: {reason}")]
    InvalidComplex { degree: i32, reason: String },
    #[error("term in degree {degree} is not projective")]
    NotProjective { degree: i32 },
    #[error("projective resolution truncated at depth {depth}; need depth {needed}")]
    Truncated { depth: usize, needed: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("not computable by this tool: {0}")]
    NotComputable(String),
}
