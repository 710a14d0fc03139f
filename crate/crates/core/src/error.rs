use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("trivial cone input")]
    TrivialCone,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty polytope")]
    EmptyPolytope,
    #[error("tau outside Δ(L)")]
    TauOutOfRange,
    #[error("trivial action")]
    TrivialAction,
    #[error("non-integral input: {0}")]
    NonIntegral(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("non-smooth toric fixed geometry: {0}")]
    NonSmoothFixedGeometry(String),
    #[error("unsupported root system {0}")]
    UnsupportedRootSystem(String),
    #[error("fundamental weight index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("zero root")]
    ZeroRoot,
    #[error("cocharacter not adapted to orbit")]
    NotAdapted,
    #[error("inconsistent fixed component: {0}")]
    InconsistentComponent(String),
    #[error("AM-FM degree formula requires equalized action")]
    NotEqualized,
    #[error("not a bispecial type: {0}")]
    NotBispecial(String),
    #[error("unknown name {name:?}; valid names: {valid}")]
    UnknownName { name: String, valid: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
