//! `S(a, b) = 12 s(a, b)` for the classical Dedekind sum `s(a, b)`.
//!
//! Two evaluators are provided. [`dedekind_naive`] sums the sawtooth products
//! directly in `O(b)` integer steps and serves as the trusted reference.
//! [`dedekind_fast`] runs the reciprocity law Euclid-style in `O(log b)`
//! steps. Both return identical reduced values.

use crate::arith::{ensure_coprime, ExactRational};
use crate::error::{Error, Result};

/// The value `S(a, b)` together with the integer `b * S(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DedekindValue {
    pub s12: ExactRational,
    pub b_times_s: i128,
}

impl DedekindValue {
    fn from_s12(s12: ExactRational, b: i64) -> Self {
        let scaled = s12 * ExactRational::from(b);
        debug_assert!(scaled.is_integer(), "b*S({}) is not an integer", s12);
        DedekindValue {
            s12,
            b_times_s: scaled.numer(),
        }
    }

    /// The classical sum `s(a, b) = S(a, b) / 12`.
    pub fn s(&self) -> ExactRational {
        self.s12 / ExactRational::from_integer(12)
    }
}

fn check_args(a: i64, b: i64) -> Result<()> {
    if b < 1 {
        return Err(Error::ModulusTooSmall { b, min: 1 });
    }
    ensure_coprime(a, b)
}

/// `S(a, b)` straight from the definition.
///
/// With `((k/b)) = (2k - b) / 2b` for `0 < k < b`, the sum becomes
/// `4 b^2 s(a, b) = Σ (2k - b)(2 (ak mod b) - b)`, which is accumulated
/// exactly in `i128`.
pub fn dedekind_naive(a: i64, b: i64) -> Result<DedekindValue> {
    check_args(a, b)?;
    let step = a.rem_euclid(b) as i128;
    let b128 = b as i128;
    let mut residue = 0i128;
    let mut acc = 0i128;
    for k in 1..b128 {
        residue += step;
        if residue >= b128 {
            residue -= b128;
        }
        acc += (2 * k - b128) * (2 * residue - b128);
    }
    let s12 = ExactRational::new(3 * acc, b128 * b128);
    Ok(DedekindValue::from_s12(s12, b))
}

/// `S(a, b)` by the reciprocity law
/// `S(a, b) + S(b, a) = a/b + b/a + 1/(ab) - 3`.
pub fn dedekind_fast(a: i64, b: i64) -> Result<DedekindValue> {
    check_args(a, b)?;
    let (s12, _) = reduced_sum(a.rem_euclid(b), b);
    Ok(DedekindValue::from_s12(s12, b))
}

/// `b * S(a, b)`, which is always an integer.
pub fn b_times_s(a: i64, b: i64) -> Result<i128> {
    dedekind_fast(a, b).map(|v| v.b_times_s)
}

/// Number of reciprocity steps [`dedekind_fast`] takes on `(a, b)`.
pub fn reciprocity_steps(a: i64, b: i64) -> Result<u32> {
    check_args(a, b)?;
    Ok(reduced_sum(a.rem_euclid(b), b).1)
}

/// `S(a, b)` for `0 <= a < b`, `gcd(a, b) = 1`; also returns the number of
/// reciprocity steps used.
///
/// Each step either reflects `a` into `(0, b/2]` via `S(b - a, b) = -S(a, b)`
/// or applies reciprocity, after which the new modulus is `a <= b/2`, so the
/// depth is at most `log2(b)`. Intermediate values are genuine Dedekind sums,
/// whose denominators divide their modulus.
fn reduced_sum(a: i64, b: i64) -> (ExactRational, u32) {
    if b == 1 {
        return (ExactRational::ZERO, 0);
    }
    if a == 1 {
        // S(1, b) = b - 3 + 2/b
        let b = b as i128;
        return (ExactRational::new((b - 1) * (b - 2), b), 0);
    }
    if 2 * a > b {
        let (s, steps) = reduced_sum(b - a, b);
        return (-s, steps);
    }
    let (inner, steps) = reduced_sum(b % a, a);
    let (a, b) = (a as i128, b as i128);
    let s = -inner + ExactRational::new(a * a + b * b + 1, a * b) - ExactRational::from_integer(3);
    (s, steps + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, mod_inverse};
    use proptest::prelude::*;

    /// `((x))` for `x = n / d`, exactly.
    fn sawtooth(n: i128, d: i128) -> ExactRational {
        let x = ExactRational::new(n, d);
        if x.is_integer() {
            return ExactRational::ZERO;
        }
        let floor = n.div_euclid(d);
        x - ExactRational::from_integer(floor) - ExactRational::new(1, 2)
    }

    /// 12 * Σ_{k=1}^{b} ((k/b))((ak/b)), term by term in rationals.
    fn sawtooth_oracle(a: i64, b: i64) -> ExactRational {
        let (a, b) = (a as i128, b as i128);
        let s = (1..=b).fold(ExactRational::ZERO, |acc, k| {
            acc + sawtooth(k, b) * sawtooth(a * k, b)
        });
        s * ExactRational::from_integer(12)
    }

    fn r(n: i128, d: i128) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn naive_examples() {
        assert_eq!(dedekind_naive(1, 3).unwrap().s12, r(2, 3));
        assert_eq!(dedekind_naive(2, 5).unwrap().s12, ExactRational::ZERO);
        assert_eq!(dedekind_naive(7, 1).unwrap().s12, ExactRational::ZERO);
    }

    #[test]
    fn fast_examples() {
        assert_eq!(dedekind_fast(1, 9).unwrap().s12, r(56, 9));
        assert_eq!(dedekind_fast(4, 9).unwrap().s12, r(-16, 9));
        assert_eq!(dedekind_fast(6, 25).unwrap().s12, r(-48, 25));
        assert_eq!(dedekind_fast(7, 1).unwrap().s12, ExactRational::ZERO);
    }

    #[test]
    fn b_times_s_examples() {
        assert_eq!(b_times_s(1, 3), Ok(2));
        assert_eq!(b_times_s(4, 9), Ok(-16));
        assert_eq!(b_times_s(2, 5), Ok(0));
    }

    #[test]
    fn classical_s_is_a_twelfth() {
        assert_eq!(dedekind_fast(1, 3).unwrap().s(), r(1, 18));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            dedekind_naive(2, 4),
            Err(Error::NotCoprime { gcd: 2, .. })
        ));
        assert!(matches!(
            dedekind_fast(3, 0),
            Err(Error::ModulusTooSmall { .. })
        ));
        assert!(matches!(
            dedekind_fast(1, -5),
            Err(Error::ModulusTooSmall { .. })
        ));
        assert!(b_times_s(6, 9).is_err());
    }

    #[test]
    fn both_match_sawtooth_oracle() {
        for b in 1..=60i64 {
            for a in -b..=2 * b {
                if gcd(a, b) != 1 {
                    continue;
                }
                let want = sawtooth_oracle(a, b);
                assert_eq!(dedekind_naive(a, b).unwrap().s12, want, "naive ({a}, {b})");
                assert_eq!(dedekind_fast(a, b).unwrap().s12, want, "fast ({a}, {b})");
            }
        }
    }

    #[test]
    fn fast_matches_naive_up_to_400() {
        for b in 1..=400i64 {
            for a in (0..b).filter(|&a| gcd(a, b) == 1) {
                assert_eq!(dedekind_fast(a, b), dedekind_naive(a, b), "({a}, {b})");
            }
        }
    }

    #[test]
    fn value_invariants() {
        for b in 1..=200i64 {
            for a in (0..b).filter(|&a| gcd(a, b) == 1) {
                let v = dedekind_fast(a, b).unwrap();
                assert_eq!(b as i128 % v.s12.denom(), 0);
                assert_eq!(
                    v.s12 * ExactRational::from(b),
                    ExactRational::from_integer(v.b_times_s)
                );
            }
        }
    }

    #[test]
    fn step_count_is_logarithmic() {
        for b in [2i64, 10, 1000, 65_537, 1_000_000, 999_983] {
            let bound = 64 - (b as u64).leading_zeros();
            for a in (1..b).step_by((b as usize / 97).max(1)) {
                if gcd(a, b) == 1 {
                    assert!(reciprocity_steps(a, b).unwrap() <= bound, "({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn inverse_symmetry_up_to_500() {
        for b in 2..=500i64 {
            for a in (1..b).filter(|&a| gcd(a, b) == 1) {
                let inv = mod_inverse(a, b).unwrap();
                assert_eq!(
                    dedekind_fast(inv, b).unwrap().s12,
                    dedekind_fast(a, b).unwrap().s12
                );
            }
        }
    }

    #[test]
    fn large_modulus_is_exact() {
        let b = 1_000_000i64;
        assert_eq!(
            dedekind_fast(1, b).unwrap().s12,
            r((b as i128 - 1) * (b as i128 - 2), b as i128)
        );
        assert_eq!(dedekind_fast(999_999, b), dedekind_naive(999_999, b));
        assert_eq!(dedekind_fast(123_457, b), dedekind_naive(123_457, b));
    }

    fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        (2i64..20_000, -1_000_000i64..1_000_000)
            .prop_filter("coprime", |&(b, a)| gcd(a, b) == 1)
            .prop_map(|(b, a)| (a, b))
    }

    proptest! {
        #[test]
        fn periodic((a, b) in coprime_pair()) {
            prop_assert_eq!(dedekind_fast(a + b, b).unwrap(), dedekind_fast(a, b).unwrap());
        }

        #[test]
        fn odd((a, b) in coprime_pair()) {
            let s = dedekind_fast(a, b).unwrap().s12;
            prop_assert_eq!(dedekind_fast(-a, b).unwrap().s12, -s);
            prop_assert_eq!(dedekind_fast(b - a, b).unwrap().s12, -s);
        }

        #[test]
        fn fast_matches_naive_random((a, b) in coprime_pair()) {
            prop_assert_eq!(dedekind_fast(a, b).unwrap(), dedekind_naive(a, b).unwrap());
        }
    }
}
