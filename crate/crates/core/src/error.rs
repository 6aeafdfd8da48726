use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("invalid letter `{0}`")]
    InvalidLetter(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} has no assigned weight")]
    AlphabetMismatch(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("square boundary must have 4 letters, found {0}")]
    BoundaryLength(usize),
    #[error("square boundary `{0}` cancels cyclically")]
    CyclicCancellation(String),
    #[error("generator `{0}` appears in both complexes")]
    AlphabetCollision(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("unknown named complex `{0}`")]
    UnknownName(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("weight system is not admissible: {0}")]
    Inadmissible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("automorphisms act on different bases")]
    BasisMismatch,
    #[error("basis of size {0} is too large for exhaustive subset search")]
    BasisTooLarge(usize),
    #[error("radius must be at least 1, got {0}")]
    InvalidRadius(i64),
    #[error("{0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Internal invariant violations are bugs, everything else is bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
