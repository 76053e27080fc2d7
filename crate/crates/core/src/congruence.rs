//! Congruences for `S(a, b)` and `b T(a, b)`.
//!
//! * [`mu`] is the three-case function that only matters modulo 8;
//!   [`mu_original`] is Tsukerman's two-case form, kept as a cross-check.
//! * [`pair_condition`] is the mod-`8b` condition on `(a1, a2, b)` that
//!   decides whether `S(a1, b) - S(a2, b)` lies in `8Z` for every `b`, and in
//!   `24Z` when `9` does not divide `b`.
//! * [`bt_residue`] predicts `b T(a, b)` modulo 24 (`3 ∤ b`) or 72 (`3 | b`).
//! * [`family_example`] builds the `b = c d^2`, `a = c d + 1` pairs with
//!   `S(1, b) - S(a, b) = c (d^2 - 1)`.

use serde::{Deserialize, Serialize};

use crate::arith::{ensure_coprime, epsilon, jacobi, mod_inverse, ExactRational};
use crate::contfrac::t_value;
use crate::dedekind::dedekind_fast;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MuValue(i64);

impl MuValue {
    pub fn value(self) -> i64 {
        self.0
    }
}

fn check_positive_modulus(a: i64, b: i64, min: i64) -> Result<()> {
    if b < min {
        return Err(Error::ModulusTooSmall { b, min });
    }
    ensure_coprime(a, b)
}

/// `2 - 2 (a|b)` for odd `b`; `4` if `b ≡ 0 (mod 4)` and `a ≡ 3 (mod 4)`;
/// `0` otherwise.
pub fn mu(a: i64, b: i64) -> Result<MuValue> {
    check_positive_modulus(a, b, 1)?;
    let m = if b % 2 == 1 {
        2 - 2 * jacobi(a, b)?
    } else if b % 4 == 0 && a.rem_euclid(4) == 3 {
        4
    } else {
        0
    };
    Ok(MuValue(m))
}

/// `2 - 2 (a|b)` for odd `b`, `(a - 1)(a + b - 1)` for even `b`.
pub fn mu_original(a: i64, b: i64) -> Result<i128> {
    check_positive_modulus(a, b, 1)?;
    if b % 2 == 1 {
        Ok(2 - 2 * jacobi(a, b)? as i128)
    } else {
        let (a, b) = (a as i128, b as i128);
        Ok((a - 1) * (a + b - 1))
    }
}

/// The congruence
/// `b (a2 μ(b, a1) - a1 μ(b, a2)) ≡ (a1 - a2)(b - 1)(a1 a2 + b - 1) (mod 8b)`.
///
/// Note the argument order inside μ: `b` is the numerator and `a1`, `a2`
/// play the role of the modulus.
pub fn pair_condition(a1: i64, a2: i64, b: i64) -> Result<bool> {
    let mu1 = mu(b, a1)?.value();
    let mu2 = mu(b, a2)?.value();
    ensure_coprime(a1, b)?;
    ensure_coprime(a2, b)?;
    Ok(condition_from_mu(a1, a2, b, mu1 as i128, mu2 as i128))
}

/// [`pair_condition`] with the μ values supplied by the caller.
pub(crate) fn condition_from_mu(a1: i64, a2: i64, b: i64, mu1: i128, mu2: i128) -> bool {
    let (a1, a2, b) = (a1 as i128, a2 as i128, b as i128);
    let lhs = b * (a2 * mu1 - a1 * mu2);
    let rhs = (a1 - a2) * (b - 1) * (a1 * a2 + b - 1);
    (lhs - rhs).rem_euclid(8 * b) == 0
}

/// Outcome of comparing [`pair_condition`] with the difference
/// `S(a1, b) - S(a2, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairVerdict {
    pub b: i64,
    pub a1: i64,
    pub a2: i64,
    pub condition_holds: bool,
    pub diff_in_8z: bool,
    pub diff_in_24z: bool,
    pub s_diff: ExactRational,
}

impl PairVerdict {
    /// The condition always agrees with membership in `8Z`.
    pub fn agrees_mod8(&self) -> bool {
        self.condition_holds == self.diff_in_8z
    }

    /// Agreement with membership in `24Z`; guaranteed only when `9 ∤ b`.
    pub fn agrees_mod24(&self) -> bool {
        self.condition_holds == self.diff_in_24z
    }
}

pub fn verdict_for_pair(a1: i64, a2: i64, b: i64) -> Result<PairVerdict> {
    let condition_holds = pair_condition(a1, a2, b)?;
    let s_diff = dedekind_fast(a1, b)?.s12 - dedekind_fast(a2, b)?.s12;
    Ok(PairVerdict {
        b,
        a1,
        a2,
        condition_holds,
        diff_in_8z: s_diff.is_in_multiples_of(8),
        diff_in_24z: s_diff.is_in_multiples_of(24),
        s_diff,
    })
}

/// `b T(a, b) ≡ -μ(a, b) + b^2 + 2 - a - a* (mod 8)`.
pub fn bt_mod8_congruence_holds(a: i64, b: i64) -> Result<bool> {
    check_positive_modulus(a, b, 2)?;
    let inv = mod_inverse(a, b)? as i128;
    let m = mu(a, b)?.value() as i128;
    let (a, b) = (a as i128, b as i128);
    let bt = b * t_value(a as i64, b as i64)?.t as i128;
    let rhs = -m + b * b + 2 - a - inv;
    Ok((bt - rhs).rem_euclid(8) == 0)
}

/// Which residue formula applies to `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BtCase {
    /// `b` odd.
    #[serde(rename = "odd")]
    Odd,
    /// `b ≡ 2 (mod 4)`, or `b ≡ 0 (mod 4)` with `a ≡ 3 (mod 4)`.
    #[serde(rename = "even_case_b")]
    EvenB,
    /// `b ≡ 0 (mod 4)` with `a ≡ 1 (mod 4)`.
    #[serde(rename = "even_case_c")]
    EvenC,
}

impl BtCase {
    pub fn select(a: i64, b: i64) -> BtCase {
        if b % 2 == 1 {
            BtCase::Odd
        } else if b % 4 == 2 || a.rem_euclid(4) == 3 {
            BtCase::EvenB
        } else {
            BtCase::EvenC
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BtCase::Odd => "odd",
            BtCase::EvenB => "even_case_b",
            BtCase::EvenC => "even_case_c",
        }
    }
}

/// Predicted and actual residue of `b T(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BtResidue {
    pub case: BtCase,
    pub three_divides_b: bool,
    pub modulus: i64,
    pub predicted: i64,
    pub actual: i64,
}

impl BtResidue {
    pub fn holds(&self) -> bool {
        self.predicted == self.actual
    }
}

pub fn bt_residue(a: i64, b: i64) -> Result<BtResidue> {
    check_positive_modulus(a, b, 2)?;
    let case = BtCase::select(a, b);
    let three_divides_b = b % 3 == 0;
    let modulus: i128 = if three_divides_b { 72 } else { 24 };
    let inv = mod_inverse(a, b)? as i128;
    let base: i128 = match case {
        BtCase::Odd => 9 + 18 * jacobi(a, b)? as i128,
        BtCase::EvenB if three_divides_b => 54,
        BtCase::EvenB => 6,
        BtCase::EvenC => 18,
    };
    let eps_term = if three_divides_b {
        16 * epsilon(a)?.value() as i128
    } else {
        0
    };
    let predicted = (base - eps_term - a as i128 - inv).rem_euclid(modulus);
    let actual = (b as i128 * t_value(a, b)?.t as i128).rem_euclid(modulus);
    Ok(BtResidue {
        case,
        three_divides_b,
        modulus: modulus as i64,
        predicted: predicted as i64,
        actual: actual as i64,
    })
}

/// One member of the `b = c d^2`, `a = c d + 1` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyExample {
    pub c: i64,
    pub d: i64,
    pub b: i64,
    pub a: i64,
    /// `S(1, b) - S(a, b)`
    pub s_diff: ExactRational,
}

impl FamilyExample {
    pub fn divisible_by(&self, m: i128) -> bool {
        self.s_diff.is_in_multiples_of(m)
    }
}

/// Builds the family member for odd `c >= 1` and odd `d >= 3`, and checks
/// `S(1, b) - S(a, b) = c (d^2 - 1)` exactly.
pub fn family_example(c: i64, d: i64) -> Result<FamilyExample> {
    let invalid = Error::InvalidFamily { c, d };
    if c < 1 || c % 2 == 0 || d < 3 || d % 2 == 0 {
        return Err(invalid);
    }
    let b = d
        .checked_mul(d)
        .and_then(|d2| d2.checked_mul(c))
        .ok_or(invalid.clone())?;
    let a = c
        .checked_mul(d)
        .and_then(|x| x.checked_add(1))
        .ok_or(invalid)?;
    let s_diff = dedekind_fast(1, b)?.s12 - dedekind_fast(a, b)?.s12;
    let expected = ExactRational::from_integer(c as i128 * (d as i128 * d as i128 - 1));
    if s_diff != expected {
        return Err(Error::Disagreement {
            what: "S(1,b)-S(a,b) and c(d^2-1)",
            a,
            b,
            left: s_diff.to_string(),
            right: expected.to_string(),
        });
    }
    Ok(FamilyExample { c, d, b, a, s_diff })
}
