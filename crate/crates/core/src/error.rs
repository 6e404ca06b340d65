use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// locate the failing object without re-running the computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("composition of differentials is nonzero at entry ({row}, {col})")]
    CompositionNonzero { row: usize, col: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bidegree mismatch: {0}")]
    BidegreeMismatch(String),
    #[error("bidegree error: {0}")]
    BidegreeError(String),
    #[error("sign error: {0}")]
    SignError(String),
    #[error("shift mismatch: left {left}, right {right}")]
    ShiftMismatch { left: i32, right: i32 },
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("not minimal: {0}")]
    NotMinimal(String),
    #[error("gauge not found: {0}")]
    GaugeNotFound(String),
    #[error("not regular: {0}")]
    NotRegular(String),
    #[error("not free on V: {0}")]
    NotFreeOnV(String),
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error("arity {0} exceeds the supported maximum of 4")]
    ArityTooLarge(usize),
    #[error("no augmentation: {0}")]
    NoAugmentation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
