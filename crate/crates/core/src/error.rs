use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid admissible sequence: {0}")]
    InvalidAdmissibleSequence(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("characteristic {p} is too small for dimension {dim} (need p > dim)")]
    CharacteristicTooSmall { p: u32, dim: usize },

    #[error("algebra does not split over the base field: {0}")]
    NonSplitAlgebra(String),

    #[error("algebra is not basic: {0}")]
    NonBasicAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid module map: {0}")]
    InvalidMap(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("index {index} outside the window [{lo}, {hi}]")]
    IndexOutOfWindow { index: i64, lo: i64, hi: i64 },

    #[error("complex windows do not match: {0}")]
    WindowMismatch(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("module universe is not closed under syzygy: {0}")]
    UniverseNotClosed(String),

    #[error("indecomposables cannot be enumerated for this algebra: {0}")]
    NotEnumerable(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
