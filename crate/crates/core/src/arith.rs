//! Exact integer and rational primitives: gcd, modular inverse, the Jacobi
//! symbol, the mod-3 sign `epsilon`, and reduced fractions over `i128`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Greatest common divisor of `|x|` and `|y|`; `gcd(0, 0) = 0`.
pub fn gcd(x: i64, y: i64) -> u64 {
    gcd_u128(x.unsigned_abs() as u128, y.unsigned_abs() as u128) as u64
}

fn gcd_u128(mut x: u128, mut y: u128) -> u128 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

fn gcd_i128(x: i128, y: i128) -> i128 {
    // Operands here are bounded well below i128::MAX, so the result fits.
    gcd_u128(x.unsigned_abs(), y.unsigned_abs()) as i128
}

pub(crate) fn ensure_coprime(a: i64, b: i64) -> Result<()> {
    match gcd(a, b) {
        1 => Ok(()),
        g => Err(Error::NotCoprime { a, b, gcd: g }),
    }
}

/// The inverse of `a` modulo `b`, chosen in `1..b`.
///
/// `b = 1` is rejected: the range `1..b` is empty there.
pub fn mod_inverse(a: i64, b: i64) -> Result<i64> {
    if b < 2 {
        return Err(Error::ModulusTooSmall { b, min: 2 });
    }
    ensure_coprime(a, b)?;
    let (mut r0, mut r1) = (a.rem_euclid(b) as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(s0.rem_euclid(b as i128) as i64)
}

/// Jacobi symbol `(a | b)` for odd `b >= 1`. The numerator is reduced mod `b`
/// first, so negative `a` is accepted.
pub fn jacobi(a: i64, b: i64) -> Result<i64> {
    if b < 1 || b % 2 == 0 {
        return Err(Error::InvalidJacobiModulus { b });
    }
    let mut n = b as u64;
    let mut m = a.rem_euclid(b) as u64;
    let mut sign = 1i64;
    while m != 0 {
        let twos = m.trailing_zeros();
        m >>= twos;
        // (2 | n) = -1 iff n = 3, 5 mod 8
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        // quadratic reciprocity for odd m, n
        if m % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (m, n) = (n % m, m);
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// The sign `ε ∈ {+1, -1}` with `a ≡ ε (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn value(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

pub fn epsilon(a: i64) -> Result<Epsilon> {
    match a.rem_euclid(3) {
        1 => Ok(Epsilon::Plus),
        2 => Ok(Epsilon::Minus),
        _ => Err(Error::DivisibleByThree { a }),
    }
}

/// A fraction in lowest terms with positive denominator.
///
/// All arithmetic is exact. An intermediate result that does not fit in
/// `i128` panics rather than wrapping; the values handled by this crate stay
/// many orders of magnitude below that bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: i128,
    den: i128,
}

const OVERFLOW: &str = "exact rational arithmetic overflowed i128";

impl ExactRational {
    pub const ZERO: ExactRational = ExactRational { num: 0, den: 1 };

    /// Builds `num / den` in lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd_i128(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().expect(OVERFLOW);
            den = den.checked_neg().expect(OVERFLOW);
        }
        ExactRational { num, den }
    }

    pub fn from_integer(n: i128) -> Self {
        ExactRational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// True iff the value is an integer divisible by `m`.
    pub fn is_in_multiples_of(&self, m: i128) -> bool {
        self.den == 1 && self.num % m == 0
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n as i128)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Neg for ExactRational {
    type Output = Self;

    fn neg(self) -> Self {
        ExactRational {
            num: self.num.checked_neg().expect(OVERFLOW),
            den: self.den,
        }
    }
}

impl Add for ExactRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let g = gcd_i128(self.den, rhs.den);
        let (l, r) = (self.den / g, rhs.den / g);
        let num = self
            .num
            .checked_mul(r)
            .and_then(|x| rhs.num.checked_mul(l).and_then(|y| x.checked_add(y)))
            .expect(OVERFLOW);
        let den = self.den.checked_mul(r).expect(OVERFLOW);
        ExactRational::new(num, den)
    }
}

impl Sub for ExactRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExactRational {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let g1 = gcd_i128(self.num, rhs.den).max(1);
        let g2 = gcd_i128(rhs.num, self.den).max(1);
        let num = (self.num / g1).checked_mul(rhs.num / g2).expect(OVERFLOW);
        let den = (self.den / g2).checked_mul(rhs.den / g1).expect(OVERFLOW);
        ExactRational::new(num, den)
    }
}

impl Div for ExactRational {
    type Output = Self;

    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        self * ExactRational::new(rhs.den, rhs.num)
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.num.checked_mul(other.den).expect(OVERFLOW);
        let r = other.num.checked_mul(self.den).expect(OVERFLOW);
        l.cmp(&r)
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(25, 6), 1);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-12, 18), 6);
        assert_eq!(gcd(i64::MIN, 0), 1u64 << 63);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 5), Ok(1));
        assert_eq!(mod_inverse(2, 5), Ok(3));
        assert_eq!(mod_inverse(6, 25), Ok(21));
        assert_eq!(mod_inverse(-1, 7), Ok(6));
        assert_eq!(mod_inverse(1, 2), Ok(1));
    }

    #[test]
    fn mod_inverse_matches_search() {
        for b in 2..60i64 {
            for a in 1..b {
                let found = (1..b).find(|x| (a * x) % b == 1);
                match found {
                    Some(x) => assert_eq!(mod_inverse(a, b), Ok(x)),
                    None => assert!(matches!(mod_inverse(a, b), Err(Error::NotCoprime { .. }))),
                }
            }
        }
    }

    #[test]
    fn mod_inverse_rejects_small_modulus() {
        assert_eq!(
            mod_inverse(1, 1),
            Err(Error::ModulusTooSmall { b: 1, min: 2 })
        );
        assert!(mod_inverse(3, 0).is_err());
        assert_eq!(
            mod_inverse(4, 6),
            Err(Error::NotCoprime { a: 4, b: 6, gcd: 2 })
        );
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, 9), Ok(1));
        assert_eq!(jacobi(2, 5), Ok(-1));
        assert_eq!(jacobi(5, 1), Ok(1));
        assert_eq!(jacobi(3, 9), Ok(0));
        assert_eq!(jacobi(-1, 3), Ok(-1));
        assert_eq!(jacobi(-1, 5), Ok(1));
        assert_eq!(jacobi(1, 4), Err(Error::InvalidJacobiModulus { b: 4 }));
        assert_eq!(jacobi(1, 0), Err(Error::InvalidJacobiModulus { b: 0 }));
        assert_eq!(jacobi(1, -3), Err(Error::InvalidJacobiModulus { b: -3 }));
    }

    fn small_primes(limit: i64) -> Vec<i64> {
        (2..=limit)
            .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
            .collect()
    }

    /// Legendre symbols by listing squares, multiplied over the factorisation.
    fn jacobi_by_squares(a: i64, b: i64) -> i64 {
        let mut n = b;
        let mut out = 1;
        for p in small_primes(b) {
            while n % p == 0 {
                n /= p;
                if p == 2 {
                    continue;
                }
                let x = a.rem_euclid(p);
                out *= if x == 0 {
                    0
                } else if (1..p).any(|y| y * y % p == x) {
                    1
                } else {
                    -1
                };
            }
        }
        out
    }

    #[test]
    fn jacobi_matches_legendre_products() {
        for b in (1..200i64).step_by(2) {
            for a in -b..2 * b {
                assert_eq!(jacobi(a, b).unwrap(), jacobi_by_squares(a, b), "({a}|{b})");
            }
        }
    }

    #[test]
    fn jacobi_multiplicative_in_numerator() {
        for b in (1..=99i64).step_by(2) {
            for a1 in 0..b {
                for a2 in 0..b {
                    let lhs = jacobi(a1 * a2, b).unwrap();
                    assert_eq!(lhs, jacobi(a1, b).unwrap() * jacobi(a2, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(4), Ok(Epsilon::Plus));
        assert_eq!(epsilon(5), Ok(Epsilon::Minus));
        assert_eq!(epsilon(-1), Ok(Epsilon::Minus));
        assert_eq!(epsilon(-2).map(Epsilon::value), Ok(1));
        assert_eq!(epsilon(9), Err(Error::DivisibleByThree { a: 9 }));
    }

    #[test]
    fn rational_normalises() {
        assert_eq!(r(6, -4), r(-3, 2));
        assert_eq!(r(0, -5), ExactRational::ZERO);
        assert_eq!(r(-3, 2).to_string(), "-3/2");
        assert_eq!(r(8, 4).to_string(), "2");
        assert!(r(48, 2).is_in_multiples_of(24));
        assert!(!r(24, 5).is_in_multiples_of(24));
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < ExactRational::ZERO);
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn rational_overflow_panics() {
        let big = ExactRational::from_integer(i128::MAX / 2 + 1);
        let _ = big + big;
    }

    fn fraction() -> impl Strategy<Value = ExactRational> {
        (-10_000_000i128..10_000_000, 1i128..10_000_000).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn add_then_sub_round_trips(x in fraction(), y in fraction()) {
            prop_assert_eq!((x + y) - y, x);
        }

        #[test]
        fn mul_then_div_round_trips(x in fraction(), y in fraction()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!((x * y) / y, x);
        }

        #[test]
        fn always_reduced(x in fraction(), y in fraction()) {
            for z in [x + y, x - y, x * y] {
                prop_assert!(z.denom() >= 1);
                prop_assert_eq!(gcd_i128(z.numer(), z.denom()), 1);
            }
        }

        #[test]
        fn mod_inverse_is_involution(b in 2i64..5000, a in 1i64..5000) {
            prop_assume!(gcd(a, b) == 1);
            let inv = mod_inverse(a, b).unwrap();
            prop_assert!((1..b).contains(&inv));
            prop_assert_eq!((a as i128 * inv as i128).rem_euclid(b as i128), 1);
            prop_assert_eq!(mod_inverse(inv, b).unwrap(), a.rem_euclid(b));
        }

        #[test]
        fn jacobi_periodic(b in (0i64..500).prop_map(|k| 2 * k + 1), a in -100_000i64..100_000) {
            prop_assert_eq!(jacobi(a, b).unwrap(), jacobi(a.rem_euclid(b), b).unwrap());
            prop_assert_eq!(jacobi(a, b).unwrap() == 0, gcd(a, b) > 1);
        }
    }
}
