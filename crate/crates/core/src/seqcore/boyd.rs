use serde::{Deserialize, Serialize};

use crate::seqdsl::{exact_boyd, BoydIndex, NormalForm, SeqExpr};

use super::admissible::certify_admissible;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoydIndices {
    pub lower: BoydIndex,
    pub upper: BoydIndex,
    /// `exact` or `numeric-bracket`.
    pub method: String,
}

/// Boyd indices: exact for table-free expressions, otherwise a numeric
/// bracket from truncated sup/inf ratios (see [`boyd_bracket_numeric`]).
pub fn boyd_indices(e: &SeqExpr, k: u64) -> BoydIndices {
    let nf = NormalForm::of(e);
    if let Some((lo, hi)) = exact_boyd(&nf) {
        return BoydIndices {
            lower: BoydIndex::Exact { value: lo },
            upper: BoydIndex::Exact { value: hi },
            method: "exact".into(),
        };
    }
    let (lower, upper) = boyd_bracket_numeric(e, k);
    BoydIndices { lower, upper, method: "numeric-bracket".into() }
}

/// Numeric bracket from `σ̄_j = sup_{k ≤ K−j} σ_{j+k}/σ_k` and the matching
/// infimum at `j ∈ {K/4, K/2}`.
///
/// The truncated quantities only see `k ≤ K − j`, so each estimate is
/// widened by twice the drift between the two values of `j` plus
/// `4·log₂K/K`, then clipped to the certified step envelope.
pub fn boyd_bracket_numeric(e: &SeqExpr, k: u64) -> (BoydIndex, BoydIndex) {
    let k = k.max(64);
    let logs: Vec<f64> = (0..=k).map(|j| e.log2_value(j)).collect();
    let estimate = |j: u64| {
        let (mut sup, mut inf) = (f64::NEG_INFINITY, f64::INFINITY);
        for base in 0..=(k - j) {
            let d = logs[(base + j) as usize] - logs[base as usize];
            sup = sup.max(d);
            inf = inf.min(d);
        }
        (sup / j as f64, inf / j as f64)
    };
    let (up_a, lo_a) = estimate(k / 4);
    let (up_b, lo_b) = estimate(k / 2);
    let slack = 4.0 * (k as f64).log2() / k as f64;
    let cert = certify_admissible(e, k);
    let bracket = |a: f64, b: f64| {
        let w = 2.0 * (a - b).abs() + slack;
        let lo = (a.min(b) - w).max(cert.log2_d0 - w);
        let hi = (a.max(b) + w).min(cert.log2_d1 + w);
        BoydIndex::Interval { lo, hi }
    };
    (bracket(lo_a, lo_b), bracket(up_a, up_b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// Lower Boyd index strictly positive.
///
/// A finite prefix does not change Boyd indices, so the exact indices of the
/// tail decide this for every DSL expression.
pub fn is_almost_strongly_increasing(e: &SeqExpr) -> Decision {
    let nf = NormalForm::of(&e.tail());
    match exact_boyd(&nf) {
        Some((lower, _)) if lower > num_traits::Zero::zero() => Decision::Yes,
        Some(_) => Decision::No,
        None => Decision::Undecided,
    }
}
