//! Exact Dedekind sums `S(a, b) = 12 s(a, b)`, continued-fraction quotient
//! sums `T(a, b)`, and exhaustive checks of their mod-8, mod-24 and mod-72
//! congruences.

pub mod arith;
pub mod congruence;
pub mod contfrac;
pub mod dedekind;
pub mod error;
pub mod perf;
pub mod report;
pub mod scan;

pub use arith::{epsilon, gcd, jacobi, mod_inverse, Epsilon, ExactRational};
pub use congruence::{
    bt_mod8_congruence_holds, bt_residue, family_example, mu, mu_original, pair_condition,
    verdict_for_pair, BtCase, BtResidue, FamilyExample, MuValue, PairVerdict,
};
pub use contfrac::{cf_expand, normalize_odd, t_value, CfExpansion, TValue};
pub use dedekind::{b_times_s, dedekind_fast, dedekind_naive, reciprocity_steps, DedekindValue};
pub use error::{Error, Result};
pub use report::{family_table, FamilyRow, Format, ReportSet};
pub use scan::{
    scan_identities, scan_theorem1, scan_theorem2, Identity, ScanKind, ScanOptions, ScanReport,
    Violation,
};
