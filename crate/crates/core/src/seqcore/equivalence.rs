use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::seqdsl::{NormalForm, SeqExpr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Equivalence {
    /// `c1·e2_j ≤ e1_j ≤ c2·e2_j` for all `j`.
    Yes {
        c1: f64,
        c2: f64,
    },
    /// The ratio is unbounded above or below; `witness` is an index where
    /// it has left the band observed on the window by more than a factor 2.
    No {
        witness: u64,
        reason: String,
    },
    Undecided,
}

impl Equivalence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Equivalence::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Equivalence::No { .. })
    }
}

/// Decides `e1 ~ e2`.
///
/// The tails are compared in normal form. If their quotient is a constant
/// the ratio is constant beyond every table prefix, so the extremes over
/// `j ≤ max(J, prefix)` bound it globally; they are reported inflated by 10%.
/// Any remaining rate, log power, slowly varying or oscillating factor makes
/// the ratio unbounded.
pub fn equivalent(e1: &SeqExpr, e2: &SeqExpr, window: u64) -> Equivalence {
    let window = window.max(8);
    let q = NormalForm::of(&e1.tail()).divide(&NormalForm::of(&e2.tail()));
    let log_ratio = |j: u64| e1.log2_value(j) - e2.log2_value(j);
    let scan = window.max(e1.prefix_len().max(e2.prefix_len()) as u64 + 1);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in 0..=scan {
        let r = log_ratio(j);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    if q.is_opaque() {
        return Equivalence::Undecided;
    }
    let reason = if !q.rate.is_zero() {
        "geometric rates differ"
    } else if q.has_oscillation() {
        "oscillating factor in the ratio"
    } else if !q.log_exponent.is_zero() {
        "log powers differ"
    } else if q.sv_count() > 0 {
        "slowly varying factors differ"
    } else {
        return Equivalence::Yes { c1: lo.exp2() / 1.1, c2: hi.exp2() * 1.1 };
    };
    let mut witness = 1u64 << 62;
    for i in 0..=62 {
        let j = (1u64 << i).max(scan);
        let r = log_ratio(j);
        if r > hi + 1.0 || r < lo - 1.0 {
            witness = j;
            break;
        }
    }
    Equivalence::No { witness, reason: reason.into() }
}
