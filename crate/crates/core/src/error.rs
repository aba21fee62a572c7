use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported word size")]
    ModulusTooLarge(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInversion,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u32, found: u32 },
    #[error("matrix is singular (rank {rank})")]
    Singular { rank: usize },
    #[error("{k} does not divide {l}")]
    NonDivisor { l: usize, k: usize },
    #[error("input matrix {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("characteristic 2 is not supported for this operation")]
    EvenCharacteristic,
    #[error("linearized polynomial is not a permutation")]
    NotAPermutation,
    #[error("x^(p^{k}+1) is not planar over F_p^{n}: n/gcd(k,n) is even")]
    NotPlanarParameters { n: usize, k: usize },
    #[error("phi is not invertible for n = {n}, k = {k}: n/gcd(k,n) is even")]
    NotInvertibleParameters { n: usize, k: usize },
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("derivative matrix in the given direction is singular (rank {rank})")]
    SingularDirection { rank: usize },
    #[error("enumeration of {size} elements exceeds the limit of {limit}")]
    SizeGuard { size: u128, limit: u128 },
    #[error("integer overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
