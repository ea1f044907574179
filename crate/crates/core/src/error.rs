use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid pair ({a}, {b}): {reason}")]
    InvalidPair { a: u64, b: u64, reason: &'static str },

    #[error("degree-genus identity fails: (d-1)(d-2) = {lhs}, but the singularities and genus require {rhs}")]
    DegreeGenus { lhs: i128, rhs: i128 },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i128 },

    #[error("semigroup too large to sieve: delta = {delta}")]
    TooLarge { delta: u128 },

    #[error("element has norm {found}, expected {expected}")]
    NormMismatch { expected: String, found: String },

    #[error("({u} + {v}*sqrt5)/2 is not an algebraic integer: u and v must have the same parity")]
    NotIntegral { u: String, v: String },

    #[error("{p} is not a prime splitting or ramifying in Z[phi]")]
    NotSplit { p: u64 },

    #[error("x^2 - 5y^2 = {n} has no admissible solution")]
    Unsolvable { n: i64 },

    #[error("fractions are not reduced or not ordered")]
    NotReduced,

    #[error("truncation order {order} too small, need at least {needed}")]
    Truncation { order: usize, needed: usize },

    #[error("leading coefficient of f_{n} vanishes up to truncation")]
    VanishingCoefficient { n: usize },

    #[error("value does not fit in a machine integer")]
    Overflow,

    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
