use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside supported range 1..=16")]
    DegreeOutOfRange(usize),
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(usize),
    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducible(usize),
    #[error("division by zero in field")]
    DivisionByZero,
    #[error("norm of the element is not 1")]
    NormNotOne,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero row space")]
    ZeroSpace,
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("enumeration size {size} exceeds cap {cap} (raise SSC_MAX_ENUM to override)")]
    CapExceeded { size: u128, cap: u128 },
    #[error("value does not fit in a machine word")]
    Overflow,
    #[error("linear map is not invertible")]
    NotInvertible,
    #[error("cells share a pivot position")]
    OverlappingPivots,
    #[error("method not applicable: {0}")]
    Inapplicable(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
