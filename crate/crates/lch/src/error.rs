use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Precondition violations are reported as values, never as panics, so the
/// CLI can map them to exit codes and tests can assert on them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring spec mismatch: {0}")]
    SpecMismatch(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    /// A point of (F_q^*)^rank (or an augmentation value) is malformed:
    /// zero entry, wrong arity, code out of range, or an incompatible field.
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("word length {len} exceeds cap {cap}")]
    WordTooLong { len: usize, cap: usize },

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("name collision: {0}")]
    NameCollision(String),

    #[error("not a unit of the coefficient ring: {0}")]
    NotAUnit(String),

    #[error("invalid automorphism: {0}")]
    InvalidAuto(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid grading data: {0}")]
    InvalidGrading(String),

    #[error("differential is not good: {0}")]
    NotGood(String),

    #[error("not an augmentation: {0}")]
    NotAnAugmentation(String),

    #[error("verification failed: {0}")]
    VerifyFailed(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("budget exceeded: {needed} candidate evaluations needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
