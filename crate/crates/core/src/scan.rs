//! Exhaustive drivers over ranges of moduli.
//!
//! A scan visits every `b` in `[2, b_max]` and every reduced residue
//! `a ∈ [1, b)` (plus the lifts `a - b` and `a + b` where noted), collects
//! every counterexample up to `cap`, and never stops at the first failure.
//! Moduli can be spread across `jobs` worker threads; the results are merged
//! in ascending `b`, so the report does not depend on the worker count.

use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{epsilon, gcd, mod_inverse, ExactRational};
use crate::congruence::{
    bt_mod8_congruence_holds, bt_residue, condition_from_mu, mu, mu_original, BtCase,
};
use crate::contfrac::{cf_expand, t_value};
use crate::dedekind::{dedekind_fast, dedekind_naive};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub jobs: usize,
    /// Maximum number of violation records kept; the total is always counted.
    pub cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: 1,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    Theorem1,
    Theorem2,
    Identities,
}

impl ScanKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanKind::Theorem1 => "theorem1",
            ScanKind::Theorem2 => "theorem2",
            ScanKind::Identities => "identities",
        }
    }

    pub fn parse(s: &str) -> Option<ScanKind> {
        [ScanKind::Theorem1, ScanKind::Theorem2, ScanKind::Identities]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

/// Individual checks run by [`scan_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// fast and naive evaluators agree
    Oracle,
    /// `S(a, b) = T(a, b) + (a + a*)/b - 3`, for `a` and its lifts `a ± b`
    Bhk,
    /// `S(a, b) + S(b, a) = a/b + b/a + 1/(ab) - 3`, through the naive evaluator
    Reciprocity,
    /// `S(a*, b) = S(a, b)`
    InverseSymmetry,
    /// `b S(a, b) ≡ 0 (mod 3)` when `3 ∤ b`
    BsMod3,
    /// `b S(a, b) ≡ 2ε (mod 9)` when `3 | b`
    BsMod9,
    /// `b T(a, b) ≡ -a - a* (mod 3)` when `3 ∤ b`
    BtMod3,
    /// `b T(a, b) ≡ 2ε - a - a* (mod 9)` when `3 | b`
    BtMod9,
    /// `b T(a, b) ≡ -μ(a, b) + b^2 + 2 - a - a* (mod 8)`, for `a` and `a ± b`
    BtMod8,
    /// simplified and original μ agree modulo 8
    MuMod8,
    /// the odd-length expansion has positive tail and evaluates back to `a/b`
    CfRoundTrip,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Oracle,
        Identity::Bhk,
        Identity::Reciprocity,
        Identity::InverseSymmetry,
        Identity::BsMod3,
        Identity::BsMod9,
        Identity::BtMod3,
        Identity::BtMod9,
        Identity::BtMod8,
        Identity::MuMod8,
        Identity::CfRoundTrip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Oracle => "oracle",
            Identity::Bhk => "bhk",
            Identity::Reciprocity => "reciprocity",
            Identity::InverseSymmetry => "inverse_symmetry",
            Identity::BsMod3 => "bs_mod3",
            Identity::BsMod9 => "bs_mod9",
            Identity::BtMod3 => "bt_mod3",
            Identity::BtMod9 => "bt_mod9",
            Identity::BtMod8 => "bt_mod8",
            Identity::MuMod8 => "mu_mod8",
            Identity::CfRoundTrip => "cf_round_trip",
        }
    }

    pub fn parse(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.as_str() == s)
    }
}

/// A pair whose condition and `S`-difference disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1Row {
    pub b: i64,
    pub a1: i64,
    pub a2: i64,
    pub condition: bool,
    pub diff_num: i64,
    pub diff_den: i64,
    #[serde(rename = "in8Z")]
    pub in_8z: bool,
    #[serde(rename = "in24Z")]
    pub in_24z: bool,
}

impl Theorem1Row {
    pub const COLUMNS: &'static [&'static str] = &[
        "b",
        "a1",
        "a2",
        "condition",
        "diff_num",
        "diff_den",
        "in8Z",
        "in24Z",
    ];
}

/// A residue `a` where the predicted `b T(a, b)` residue or the mod-8
/// congruence fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem2Row {
    pub b: i64,
    pub a: i64,
    pub case: BtCase,
    pub modulus: i64,
    pub predicted: i64,
    pub actual: i64,
    pub mod8_holds: bool,
}

impl Theorem2Row {
    pub const COLUMNS: &'static [&'static str] = &[
        "b",
        "a",
        "case",
        "modulus",
        "predicted",
        "actual",
        "mod8_holds",
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRow {
    pub identity: Identity,
    pub b: i64,
    pub a: i64,
    pub detail: String,
}

impl IdentityRow {
    pub const COLUMNS: &'static [&'static str] = &["identity", "b", "a", "detail"];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Violation {
    Theorem1(Theorem1Row),
    Theorem2(Theorem2Row),
    Identity(IdentityRow),
}

impl Violation {
    pub fn b(&self) -> i64 {
        match self {
            Violation::Theorem1(r) => r.b,
            Violation::Theorem2(r) => r.b,
            Violation::Identity(r) => r.b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParameters {
    pub b_max: i64,
    pub include_9div: bool,
    pub cap: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<Identity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub b_range: [i64; 2],
    pub parameters: ScanParameters,
    pub tuples_checked: u64,
    /// Total number of violations found, including those beyond the cap.
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_micros: u64,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn truncated(&self) -> bool {
        self.violation_count > self.violations.len() as u64
    }
}

#[derive(Debug, Default)]
struct ModulusOutcome {
    checked: u64,
    found: u64,
    kept: Vec<Violation>,
}

impl ModulusOutcome {
    fn record(&mut self, cap: usize, v: impl FnOnce() -> Violation) {
        self.found += 1;
        if self.kept.len() < cap {
            self.kept.push(v());
        }
    }
}

fn reduced_residues(b: i64) -> Vec<i64> {
    (1..b).filter(|&a| gcd(a, b) == 1).collect()
}

/// Runs `f` on every modulus, `jobs` threads at a time, returning results in
/// input order.
fn map_moduli<T, F>(moduli: &[i64], jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync,
{
    let jobs = jobs.clamp(1, moduli.len().max(1));
    if jobs == 1 {
        return moduli.iter().map(|&b| f(b)).collect();
    }
    let f = &f;
    let mut tagged: Vec<(usize, T)> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                s.spawn(move || {
                    moduli
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(jobs)
                        .map(|(i, &b)| (i, f(b)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    tagged.sort_unstable_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, t)| t).collect()
}

fn assemble(
    kind: ScanKind,
    parameters: ScanParameters,
    outcomes: Vec<ModulusOutcome>,
    started: Instant,
) -> ScanReport {
    let cap = parameters.cap;
    let mut report = ScanReport {
        kind,
        b_range: [2, parameters.b_max],
        parameters,
        tuples_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        elapsed_micros: 0,
    };
    for o in outcomes {
        report.tuples_checked += o.checked;
        report.violation_count += o.found;
        let room = cap - report.violations.len();
        report.violations.extend(o.kept.into_iter().take(room));
    }
    report.elapsed_micros = started.elapsed().as_micros() as u64;
    report
}

fn check_b_max(b_max: i64) -> Result<()> {
    if b_max < 2 {
        return Err(Error::ModulusTooSmall { b: b_max, min: 2 });
    }
    Ok(())
}

/// Checks, for every pair `a1 < a2` of reduced residues mod `b`, that the
/// pair condition agrees with `S(a1, b) - S(a2, b) ∈ 8Z` and with
/// `∈ 24Z`. Moduli divisible by 9 are skipped unless `include_9div`; when
/// included, their `24Z` disagreements are reported as violations too.
pub fn scan_theorem1(b_max: i64, include_9div: bool, opts: &ScanOptions) -> Result<ScanReport> {
    check_b_max(b_max)?;
    let started = Instant::now();
    let moduli: Vec<i64> = (2..=b_max).filter(|b| include_9div || b % 9 != 0).collect();
    let cap = opts.cap;
    let outcomes = map_moduli(&moduli, opts.jobs, |b| theorem1_modulus(b, cap));
    let params = ScanParameters {
        b_max,
        include_9div,
        cap,
        identities: Vec::new(),
    };
    Ok(assemble(ScanKind::Theorem1, params, outcomes, started))
}

fn theorem1_modulus(b: i64, cap: usize) -> ModulusOutcome {
    let residues = reduced_residues(b);
    // b*S(a, b) and μ(b, a) per residue make each pair O(1).
    let table: Vec<(i64, i128, i128)> = residues
        .iter()
        .map(|&a| {
            let bs = dedekind_fast(a, b).expect("reduced residue").b_times_s;
            let m = mu(b, a).expect("reduced residue").value() as i128;
            (a, bs, m)
        })
        .collect();
    let (b8, b24) = (8 * b as i128, 24 * b as i128);
    let mut out = ModulusOutcome::default();
    for (i, &(a1, bs1, mu1)) in table.iter().enumerate() {
        for &(a2, bs2, mu2) in &table[i + 1..] {
            out.checked += 1;
            let condition = condition_from_mu(a1, a2, b, mu1, mu2);
            let d = bs1 - bs2;
            let (in_8z, in_24z) = (d % b8 == 0, d % b24 == 0);
            if condition != in_8z || condition != in_24z {
                out.record(cap, || {
                    let diff = ExactRational::new(d, b as i128);
                    Violation::Theorem1(Theorem1Row {
                        b,
                        a1,
                        a2,
                        condition,
                        diff_num: i64::try_from(diff.numer()).expect("difference fits i64"),
                        diff_den: i64::try_from(diff.denom()).expect("denominator divides b"),
                        in_8z,
                        in_24z,
                    })
                });
            }
        }
    }
    out
}

/// Checks the predicted residue of `b T(a, b)` and the mod-8 congruence for
/// every reduced residue `a` and its lifts `a - b`, `a + b`.
pub fn scan_theorem2(b_max: i64, opts: &ScanOptions) -> Result<ScanReport> {
    check_b_max(b_max)?;
    let started = Instant::now();
    let moduli: Vec<i64> = (2..=b_max).collect();
    let cap = opts.cap;
    let outcomes = map_moduli(&moduli, opts.jobs, |b| theorem2_modulus(b, cap));
    let params = ScanParameters {
        b_max,
        include_9div: false,
        cap,
        identities: Vec::new(),
    };
    Ok(assemble(ScanKind::Theorem2, params, outcomes, started))
}

fn theorem2_modulus(b: i64, cap: usize) -> ModulusOutcome {
    let mut out = ModulusOutcome::default();
    for a0 in reduced_residues(b) {
        for a in [a0, a0 - b, a0 + b] {
            out.checked += 1;
            let r = bt_residue(a, b).expect("reduced residue");
            let mod8_holds = bt_mod8_congruence_holds(a, b).expect("reduced residue");
            if !r.holds() || !mod8_holds {
                out.record(cap, || {
                    Violation::Theorem2(Theorem2Row {
                        b,
                        a,
                        case: r.case,
                        modulus: r.modulus,
                        predicted: r.predicted,
                        actual: r.actual,
                        mod8_holds,
                    })
                });
            }
        }
    }
    out
}

/// Runs the selected identity checks for every modulus in `[2, b_max]`.
pub fn scan_identities(b_max: i64, checks: &[Identity], opts: &ScanOptions) -> Result<ScanReport> {
    check_b_max(b_max)?;
    let started = Instant::now();
    let moduli: Vec<i64> = (2..=b_max).collect();
    let mut checks = checks.to_vec();
    checks.sort_by_key(|c| Identity::ALL.iter().position(|x| x == c));
    checks.dedup();
    let cap = opts.cap;
    let outcomes = map_moduli(&moduli, opts.jobs, |b| identities_modulus(b, &checks, cap));
    let params = ScanParameters {
        b_max,
        include_9div: false,
        cap,
        identities: checks,
    };
    Ok(assemble(ScanKind::Identities, params, outcomes, started))
}

fn identities_modulus(b: i64, checks: &[Identity], cap: usize) -> ModulusOutcome {
    let mut out = ModulusOutcome::default();
    let b_r = ExactRational::from(b);
    let three = ExactRational::from_integer(3);
    for a in reduced_residues(b) {
        let inv = mod_inverse(a, b).expect("reduced residue");
        let fast = dedekind_fast(a, b).expect("reduced residue");
        let needs_naive =
            checks.contains(&Identity::Oracle) || checks.contains(&Identity::Reciprocity);
        let naive = needs_naive.then(|| dedekind_naive(a, b).expect("reduced residue"));
        for &check in checks {
            let mut fail = |a: i64, detail: String| {
                out.record(cap, || {
                    Violation::Identity(IdentityRow {
                        identity: check,
                        b,
                        a,
                        detail,
                    })
                })
            };
            let mut tried = 1u64;
            match check {
                Identity::Oracle => {
                    let naive = naive.expect("computed above");
                    if naive != fast {
                        fail(a, format!("fast={} naive={}", fast.s12, naive.s12));
                    }
                }
                Identity::Bhk => {
                    tried = 3;
                    for lifted in [a, a - b, a + b] {
                        let s = dedekind_fast(lifted, b).expect("reduced residue").s12;
                        let t = t_value(lifted, b).expect("reduced residue").t;
                        let rhs = ExactRational::from(t)
                            + ExactRational::new(lifted as i128 + inv as i128, b as i128)
                            - three;
                        if s != rhs {
                            fail(lifted, format!("S={s} T+(a+a*)/b-3={rhs}"));
                        }
                    }
                }
                Identity::Reciprocity => {
                    let s_ab = naive.expect("computed above").s12;
                    let s_ba = dedekind_naive(b, a).expect("coprime").s12;
                    let a_r = ExactRational::from(a);
                    let rhs = a_r / b_r + b_r / a_r + ExactRational::from_integer(1) / (a_r * b_r)
                        - three;
                    let residual = s_ab + s_ba - rhs;
                    if !residual.is_zero() {
                        fail(a, format!("residual={residual}"));
                    }
                }
                Identity::InverseSymmetry => {
                    let s_inv = dedekind_fast(inv, b).expect("reduced residue").s12;
                    if s_inv != fast.s12 {
                        fail(a, format!("S(a*,b)={s_inv} S(a,b)={}", fast.s12));
                    }
                }
                Identity::BsMod3 | Identity::BtMod3 if b % 3 == 0 => tried = 0,
                Identity::BsMod9 | Identity::BtMod9 if b % 3 != 0 => tried = 0,
                Identity::BsMod3 => {
                    if fast.b_times_s.rem_euclid(3) != 0 {
                        fail(a, format!("bS={}", fast.b_times_s));
                    }
                }
                Identity::BsMod9 => {
                    let e = epsilon(a).expect("3 divides b").value() as i128;
                    if (fast.b_times_s - 2 * e).rem_euclid(9) != 0 {
                        fail(a, format!("bS={} eps={e}", fast.b_times_s));
                    }
                }
                Identity::BtMod3 | Identity::BtMod9 => {
                    let bt = b as i128 * t_value(a, b).expect("reduced residue").t as i128;
                    let (target, m) = if check == Identity::BtMod3 {
                        (-(a as i128) - inv as i128, 3)
                    } else {
                        let e = epsilon(a).expect("3 divides b").value() as i128;
                        (2 * e - a as i128 - inv as i128, 9)
                    };
                    if (bt - target).rem_euclid(m) != 0 {
                        fail(a, format!("bT={bt} expected {target} mod {m}"));
                    }
                }
                Identity::BtMod8 => {
                    tried = 3;
                    for lifted in [a, a - b, a + b] {
                        if !bt_mod8_congruence_holds(lifted, b).expect("reduced residue") {
                            fail(lifted, "bT mod 8".to_string());
                        }
                    }
                }
                Identity::MuMod8 => {
                    let simple = mu(a, b).expect("reduced residue").value() as i128;
                    let original = mu_original(a, b).expect("reduced residue");
                    if (simple - original).rem_euclid(8) != 0 {
                        fail(a, format!("mu={simple} mu_original={original}"));
                    }
                }
                Identity::CfRoundTrip => {
                    tried = 3;
                    for lifted in [a, a - b, a + b] {
                        let cf = cf_expand(lifted, b).expect("reduced residue");
                        let ok = cf.n() % 2 == 1
                            && cf.tail.iter().all(|&q| q >= 1)
                            && cf.value() == ExactRational::new(lifted as i128, b as i128);
                        if !ok {
                            fail(lifted, format!("expansion {cf}"));
                        }
                    }
                }
            }
            out.checked += tried;
        }
    }
    out
}
