use thiserror::Error;

/// Everything that can go wrong in the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),
    #[error("operation requires a field of positive characteristic")]
    NeedsPositiveCharacteristic,
    #[error("all inputs are zero")]
    AllZero,
    #[error("zero input")]
    ZeroInput,
    #[error("polynomial is not a polynomial in Z = x^p - x")]
    NotCentral,
    #[error("series has zero constant term")]
    NotAUnit,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("trailing coefficient a_0 is zero")]
    ZeroTrailing,
    #[error("operator has order zero")]
    OrderZero,
    #[error("operator has non-polynomial coefficients")]
    NotIntegral,
    #[error("operator is not primitive")]
    NotPrimitive,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("p = {0} divides every coefficient")]
    DegenerateReduction(u64),
    #[error("field F_{p} too small to sample {k}+1 constants")]
    FieldTooSmall { p: u64, k: usize },
    #[error("prime {p} exceeds the configured cap {cap}")]
    PrimeTooLarge { p: u64, cap: u64 },
    #[error("precision bookkeeping violated: {0}")]
    PrecisionContract(String),
    #[error("modular reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
