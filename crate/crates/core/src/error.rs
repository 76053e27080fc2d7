use thiserror::Error;

/// Precondition failures shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd({a}, {b}) = {gcd}, arguments must be coprime")]
    NotCoprime { a: i64, b: i64, gcd: u64 },
    #[error("modulus must be at least {min}, got {b}")]
    ModulusTooSmall { b: i64, min: i64 },
    #[error("Jacobi symbol needs an odd positive denominator, got {b}")]
    InvalidJacobiModulus { b: i64 },
    #[error("{a} is divisible by 3, epsilon is undefined")]
    DivisibleByThree { a: i64 },
    #[error("family parameters need odd c >= 1 and odd d >= 3, got c={c}, d={d}")]
    InvalidFamily { c: i64, d: i64 },
    #[error("{what} disagree at (a, b) = ({a}, {b}): {left} vs {right}")]
    Disagreement {
        what: &'static str,
        a: i64,
        b: i64,
        left: String,
        right: String,
    },
    #[error("report parse error: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
