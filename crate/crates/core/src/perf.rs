//! Timing comparison of [`dedekind_naive`] against [`dedekind_fast`].
//!
//! Times are integer nanoseconds per evaluation. Each measurement repeats the
//! evaluation until at least [`MIN_BATCH`] has elapsed, so sub-microsecond
//! calls are still resolved.

use std::time::{Duration, Instant};

use crate::arith::gcd;
use crate::dedekind::{dedekind_fast, dedekind_naive};
use crate::error::{Error, Result};

pub const MIN_BATCH: Duration = Duration::from_micros(200);

/// Deterministic sample `(a, b)` with `b` at or just above `b0` and `a`
/// coprime to `b` near `0.618 b`.
pub fn sample_pairs(b0: i64, count: usize) -> Vec<(i64, i64)> {
    (0..count as i64)
        .map(|i| {
            let b = b0 + i;
            let mut a = ((b as i128 * 618) / 1000).max(1) as i64;
            while gcd(a, b) != 1 {
                a += 1;
            }
            (a, b)
        })
        .collect()
}

/// The moduli used for a run up to `b_max`: `10, 100, ...` up to `b_max`,
/// or just `b_max` when it is below 10.
pub fn decade_points(b_max: i64) -> Vec<i64> {
    if b_max < 10 {
        return vec![b_max];
    }
    std::iter::successors(Some(10i64), |&b| b.checked_mul(10))
        .take_while(|&b| b <= b_max)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecadeTiming {
    pub b: i64,
    pub samples: usize,
    pub naive_median_ns: u64,
    pub fast_median_ns: u64,
}

fn nanos_per_call(mut f: impl FnMut()) -> u64 {
    let mut reps = 1u64;
    loop {
        let start = Instant::now();
        for _ in 0..reps {
            f();
        }
        let elapsed = start.elapsed();
        if elapsed >= MIN_BATCH || reps >= 1 << 24 {
            return (elapsed.as_nanos() / reps as u128).max(1) as u64;
        }
        reps *= 2;
    }
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// Times both evaluators on `samples` pairs at each modulus in `points`,
/// failing on the first value disagreement.
pub fn time_decades(points: &[i64], samples: usize) -> Result<Vec<DecadeTiming>> {
    if samples == 0 {
        return Ok(Vec::new());
    }
    points
        .iter()
        .map(|&b0| {
            let mut naive = Vec::with_capacity(samples);
            let mut fast = Vec::with_capacity(samples);
            for (a, b) in sample_pairs(b0, samples) {
                let reference = dedekind_naive(a, b)?;
                let value = dedekind_fast(a, b)?;
                if reference != value {
                    return Err(Error::Disagreement {
                        what: "naive and fast evaluators",
                        a,
                        b,
                        left: reference.s12.to_string(),
                        right: value.s12.to_string(),
                    });
                }
                naive.push(nanos_per_call(|| {
                    std::hint::black_box(dedekind_naive(std::hint::black_box(a), b).ok());
                }));
                fast.push(nanos_per_call(|| {
                    std::hint::black_box(dedekind_fast(std::hint::black_box(a), b).ok());
                }));
            }
            Ok(DecadeTiming {
                b: b0,
                samples,
                naive_median_ns: median(naive),
                fast_median_ns: median(fast),
            })
        })
        .collect()
}

/// Ratio of last to first median, as `(numerator, denominator)` nanoseconds.
pub fn growth(timings: &[DecadeTiming], pick: impl Fn(&DecadeTiming) -> u64) -> Option<(u64, u64)> {
    Some((pick(timings.last()?), pick(timings.first()?)))
}
