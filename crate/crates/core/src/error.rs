//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of zero in a coefficient ring.
    DivisionByZero,
    /// `p` is not an odd prime in the supported range.
    InvalidPrime(u32),
    /// Operands live over different primes or incompatible rings.
    RingMismatch,
    /// A Laurent element is not in the ring of integers (valuation < 0).
    /// For series the offending ζ-degree is recorded.
    NotIntegral { degree: Option<usize> },
    /// A decision (valuation, leading term, reduction) cannot be certified
    /// at the available t- or ζ-precision.
    PrecisionExhausted(&'static str),
    /// Division of series with ord(num) < ord(den).
    OrderMismatch,
    /// The configured composition budget or precision cap was exceeded.
    ResourceLimit(&'static str),
    /// An operation has a prime-size hypothesis the input does not meet.
    UnsupportedPrime { p: u32, required: &'static str },
    /// A norm bound degenerates because λ = 0.
    LambdaZero,
    /// A summand has a pole of order ≥ 2 at the given index.
    HigherOrderPole { at: i64 },
    /// A sum expected to be p-integral has negative valuation.
    NegativeValuation,
    /// A sparse polynomial exceeded the configured total-degree cap.
    DegreeOverflow,
    /// The operation requires a parabolic series (f(0) = 0, f'(0) = 1).
    NotParabolic,
    /// A verified identity failed; the payload lists the differences.
    Mismatch(String),
    /// An internal invariant was violated; indicates a bug, not a result.
    Internal(&'static str),
    /// The requested family/operation combination is not defined.
    Unsupported(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidPrime(p) => write!(f, "{p} is not an odd prime below 2^16"),
            Error::RingMismatch => write!(f, "operands belong to different coefficient rings"),
            Error::NotIntegral { degree: Some(d) } => {
                write!(f, "coefficient of degree {d} has negative t-valuation")
            }
            Error::NotIntegral { degree: None } => write!(f, "element has negative t-valuation"),
            Error::PrecisionExhausted(what) => write!(f, "precision exhausted: {what}"),
            Error::OrderMismatch => write!(f, "series division with ord(num) < ord(den)"),
            Error::ResourceLimit(what) => write!(f, "resource limit exceeded: {what}"),
            Error::UnsupportedPrime { p, required } => {
                write!(f, "p = {p} unsupported here (requires {required})")
            }
            Error::LambdaZero => write!(f, "lambda = 0: bound degenerates"),
            Error::HigherOrderPole { at } => write!(f, "pole of order >= 2 at index {at}"),
            Error::NegativeValuation => write!(f, "sum has negative p-adic valuation"),
            Error::DegreeOverflow => write!(f, "sparse polynomial degree cap exceeded"),
            Error::NotParabolic => write!(f, "series is not parabolic (needs f(0)=0, f'(0)=1)"),
            Error::Mismatch(detail) => write!(f, "identity mismatch: {detail}"),
            Error::Internal(what) => write!(f, "internal invariant violated: {what}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}
