use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidCharacteristic(u64),

    #[error("ring dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("term order {order} does not eliminate the variables after the first {keep}")]
    NotElimination { order: String, keep: usize },

    #[error("monomial ideal is not strongly stable")]
    NotStronglyStable,

    #[error("ideal is zero or the unit ideal")]
    TrivialIdeal,

    #[error("Hilbert data violates Macaulay's bound in degree {degree}")]
    MacaulayViolation { degree: u32 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("computation exceeded the degree cutoff {cutoff}")]
    CutoffExceeded { cutoff: u32 },

    #[error("integer overflow while counting monomials")]
    Overflow,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
