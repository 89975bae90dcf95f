use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{exponent} does not fit the element encoding")]
    FieldTooLarge { p: u32, exponent: u32 },

    #[error("modulus {0} is not a monic irreducible polynomial")]
    BadModulus(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("encoding {enc} is outside the field of order {order}")]
    OutOfField { enc: u64, order: u32 },

    #[error("element {0} does not lie in the subfield")]
    NotInSubfield(u32),

    #[error("operation requires odd characteristic")]
    EvenCharacteristic,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the null-range is not defined for 1x1 matrices")]
    NullRangeUndefined,

    #[error("matrix has coefficients outside the subfield")]
    NotSubfieldMatrix,

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("zero exclusion is only meaningful on the isotropic cone (k = 0)")]
    ExcludeZeroNeedsIsotropic,

    #[error("enumerating {needed} vectors exceeds capacity {capacity}")]
    CapacityExceeded { needed: u128, capacity: u128 },

    #[error("an exhaustive range is required, got a sampled one")]
    SampledInput,

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
