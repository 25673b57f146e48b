use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller passed something outside an operation's contract.
    Usage,
    /// Division by zero in the field.
    Arithmetic,
    /// An algebraic invariant failed; some precondition upstream was violated.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("a polynomial needs at least one coefficient")]
    EmptyPolynomial,
    #[error("the zero form does not define a hyperplane")]
    ZeroForm,
    #[error("the zero derivation is not allowed here")]
    ZeroDerivation,
    #[error("derivations are S-linearly dependent")]
    Dependent,
    #[error("hyperplane is not in the support of the arrangement")]
    NotInSupport,
    #[error("operation needs a prime field")]
    InfiniteField,
    #[error("exponent {0} is too large")]
    Overflow(u64),
    #[error("polynomial of degree {degree} is not divisible by the {power}-th power of the form")]
    NotDivisible { degree: usize, power: u32 },
    #[error("no generic linear form exists for this derivation")]
    NoGenericForm,
    #[error("shift {shift} is outside 0..={max}")]
    ShiftOutOfRange { shift: u64, max: u64 },
    #[error("processing order is not a permutation of the support")]
    BadOrder,
    #[error("internal consistency failure: {0}")]
    Inconsistent(&'static str),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DivisionByZero => ErrorKind::Arithmetic,
            Error::NotDivisible { .. } | Error::Inconsistent(_) => ErrorKind::Internal,
            _ => ErrorKind::Usage,
        }
    }
}
