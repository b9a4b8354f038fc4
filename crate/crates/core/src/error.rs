use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a supported prime (2 <= p <= {max})", max = crate::field::MAX_PRIME)]
    InvalidModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("variable mismatch: {0:?} vs {1:?}")]
    VariableMismatch(Var, Var),
    #[error("operator flavor mismatch: {0} vs {1}")]
    FlavorMismatch(String, String),
    #[error("consecutive differentials starting at degree {0} do not compose to zero")]
    CompositionNonzero(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("{inserts} inserts exceed arity {arity}")]
    TooManyInserts { inserts: usize, arity: usize },
    #[error("monomial box {0:?} is too small for p = {1}")]
    BoundsTooSmall((u32, u32), u32),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
}

pub type Result<T> = std::result::Result<T, Error>;
