//! Regular continued fractions of `a/b` with an odd number of tail quotients,
//! and the alternating quotient sum `T(a, b)`.

use std::fmt;

use crate::arith::{ensure_coprime, ExactRational};
use crate::error::{Error, Result};

/// `a/b = [head; tail[0], ..., tail[n-1]]` with `n` odd and every tail
/// quotient `>= 1`. The last quotient may be 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    pub head: i64,
    pub tail: Vec<i64>,
}

impl CfExpansion {
    /// Index of the last partial quotient.
    pub fn n(&self) -> usize {
        self.tail.len()
    }

    /// Evaluates the expansion back to a reduced fraction.
    pub fn value(&self) -> ExactRational {
        let mut acc: Option<ExactRational> = None;
        for &q in self.tail.iter().rev() {
            let q = ExactRational::from(q);
            acc = Some(match acc {
                None => q,
                Some(x) => q + ExactRational::from_integer(1) / x,
            });
        }
        let head = ExactRational::from(self.head);
        match acc {
            None => head,
            Some(x) => head + ExactRational::from_integer(1) / x,
        }
    }

    /// `Σ_{k=0}^{n} (-1)^(k-1) a_k = -a_0 + a_1 - a_2 + ... + a_n`.
    pub fn alternating_sum(&self) -> i64 {
        let tail: i64 = self
            .tail
            .iter()
            .enumerate()
            .map(|(i, &q)| if i % 2 == 0 { q } else { -q })
            .sum();
        tail - self.head
    }
}

/// `[0;2,1,1]` style rendering.
impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.head)?;
        for (i, q) in self.tail.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { ';' } else { ',' }, q)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TValue {
    pub t: i64,
}

/// Continued fraction of `a/b` normalised to odd length.
///
/// Euclid with floor division yields `[a_0; a_1, ..., a_n]` with every tail
/// quotient `>= 1`; negative `a` gives a negative head. When `n` is even:
///
/// * `n = 0`: the head is split, `[a_0] -> [a_0 - 1; 1]`;
/// * `a_n >= 2`: the last quotient is split, `(.., a_n) -> (.., a_n - 1, 1)`;
/// * `a_n = 1`: it is merged into its predecessor, `(.., a_{n-1}, 1) -> (.., a_{n-1} + 1)`.
pub fn cf_expand(a: i64, b: i64) -> Result<CfExpansion> {
    if b < 1 {
        return Err(Error::ModulusTooSmall { b, min: 1 });
    }
    ensure_coprime(a, b)?;
    let head = a.div_euclid(b);
    let mut tail = Vec::new();
    let (mut num, mut den) = (b, a.rem_euclid(b));
    while den != 0 {
        tail.push(num / den);
        (num, den) = (den, num % den);
    }
    Ok(normalize_odd(CfExpansion { head, tail }))
}

/// Rewrites an expansion (tail quotients `>= 1`) into the odd-length form
/// described on [`cf_expand`]. The value is unchanged.
pub fn normalize_odd(mut cf: CfExpansion) -> CfExpansion {
    if cf.tail.len() % 2 == 1 {
        return cf;
    }
    match cf.tail.last().copied() {
        None => {
            cf.head -= 1;
            cf.tail.push(1);
        }
        Some(last) if last >= 2 => {
            *cf.tail.last_mut().unwrap() = last - 1;
            cf.tail.push(1);
        }
        Some(_) => {
            cf.tail.pop();
            *cf.tail.last_mut().unwrap() += 1;
        }
    }
    cf
}

/// `T(a, b)`, the alternating sum of the odd-normalised partial quotients.
pub fn t_value(a: i64, b: i64) -> Result<TValue> {
    cf_expand(a, b).map(|cf| TValue {
        t: cf.alternating_sum(),
    })
}
