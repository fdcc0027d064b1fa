use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    InvalidField(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("relations are not admissible: {0}")]
    NonAdmissible(String),
    #[error("path reduction did not terminate within length cap {0}")]
    ReductionCap(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("the zero object is not allowed here")]
    ZeroObject,
    #[error("element is not idempotent modulo the given ideal")]
    NotIdempotentModIdeal,
    #[error("ideal is not nilpotent within the dimension bound")]
    NotNilpotent,
    #[error("could not decide the endomorphism ring structure: {0}")]
    Undecided(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operation needs a small prime field, not {0}")]
    NeedsPrimeField(crate::exactlin::FieldSpec),
    #[error("enumeration budget exceeded: {count} candidates (limit {limit})")]
    Budget { count: u128, limit: u128 },
    #[error("Cartan matrix is not invertible over the integers")]
    CoxeterUndefined,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
