use thiserror::Error;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("odd index sets overlap")]
    OverlappingSets,
    #[error("signature mismatch: ({0}) vs ({1})")]
    SignatureMismatch(String, String),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("negative exponent in a polynomial context")]
    NegativeExponent,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("letter outside the declared alphabet: {0}")]
    AlphabetError(String),
    #[error("word degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: i64, cap: i64 },
    #[error("span solve failed: residual with {0} terms")]
    SpanSolveFailure(usize),
    #[error("weight is not in the support")]
    WeightNotInSupport,
    #[error("undecided within window: {0}")]
    UndecidedWithinWindow(String),
    #[error("invalid triangular split: {0}")]
    InvalidTriangularSplit(String),
    #[error("inconsistent shadow: {0}")]
    InconsistentShadow(String),
    #[error("cone generators must be linearly independent: {0}")]
    DependentGenerators(String),
    #[error("gradation error: {0}")]
    GradationError(String),
    #[error("not a Kac module: {0}")]
    NotAKacModule(String),
    #[error("module is infinite-dimensional and only available symbolically: {0}")]
    SymbolicOnly(String),
    #[error("window too large: {size} basis vectors exceed the budget {budget}")]
    WindowTooLarge { size: usize, budget: usize },
    #[error("unknown module tag: {0}")]
    UnknownTag(String),
    #[error("not classifiable: {0}")]
    NotClassifiable(String),
    #[error("invalid module descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
