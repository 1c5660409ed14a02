//! The supremum `A(k)` of the Edmunds–Netrusov coupling,
//!
//! `A(k) = sup_{u ≥ k} τ/σ(u^{1/d}) · u^α · min{log(u/k + 1)/k, 1}^α`,
//!
//! evaluated on the grid `u = k·2^i`, `0 ≤ i ≤ u_max_factor`. Logarithms are
//! taken to base 2.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::rational::{fmt_rational, to_f64, Rational};
use crate::seqdsl::{NormalForm, SeqExpr};

use super::problem::EmbeddingProblem;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnA {
    pub value: f64,
    pub log2_value: f64,
    /// `log2 u` at the maximising grid point.
    pub argmax_log2_u: f64,
    /// The integrand is non-increasing beyond the grid, so the grid
    /// supremum is the supremum over all `u ≥ k` sampled at `k·2^i`.
    pub certified: bool,
    /// The grid did not reach a point from which decrease is guaranteed.
    pub truncated: bool,
    /// The integrand grows without bound along the tail.
    pub divergent: bool,
    pub note: String,
}

fn alpha_of(prob: &EmbeddingProblem) -> Result<Rational, AnalysisError> {
    let alpha = prob.p1.recip() - prob.p2.recip();
    if !alpha.is_positive() {
        return Err(AnalysisError::Precondition(format!("A(k) needs p1 < p2; got p1 = {}, p2 = {}", prob.p1, prob.p2)));
    }
    let gap = prob.q2.recip() - prob.q1.recip();
    if gap > -alpha {
        return Err(AnalysisError::Precondition(format!(
            "A(k) needs 1/q2 - 1/q1 <= -alpha; got {} > -{}",
            fmt_rational(&gap),
            fmt_rational(&alpha)
        )));
    }
    Ok(alpha)
}

/// Evaluates `A(k)` on the grid `k·2^i`, `i ≤ u_max_factor`.
pub fn en_a(k: u64, prob: &EmbeddingProblem, u_max_factor: u32) -> Result<EnA, AnalysisError> {
    prob.validate()?;
    if k == 0 {
        return Err(AnalysisError::Precondition("k must be at least 1".into()));
    }
    let alpha = alpha_of(prob)?;
    let a = to_f64(&alpha);
    let d = prob.d as f64;
    let ratio = SeqExpr::product(vec![prob.tau.clone(), prob.sigma.clone().inverse()]);
    let kf = k as f64;
    let log2k = kf.log2();

    let integrand = |i: u32| -> (f64, bool) {
        let x = log2k + i as f64;
        let m = ((i as f64).exp2() + 1.0).log2() / kf;
        let saturated = m >= 1.0;
        let log2_f = ratio.log2_at(x / d) + a * x + a * m.min(1.0).log2();
        (log2_f, saturated)
    };

    let mut best = (f64::NEG_INFINITY, log2k);
    let mut first_saturated = None;
    for i in 0..=u_max_factor {
        let (v, sat) = integrand(i);
        if sat && first_saturated.is_none() {
            first_saturated = Some(i);
        }
        if v > best.0 {
            best = (v, log2k + i as f64);
        }
    }
    let x_top = log2k + u_max_factor as f64;

    // Tail behaviour of τ/σ(u^{1/d})·u^α = u^e (1 + log2 u / d)^B.
    let nf = NormalForm::of(&ratio.tail());
    let (certified, divergent, note) = if nf.is_opaque() || nf.has_oscillation() || nf.sv_count() > 0 {
        (false, false, "tail of tau/sigma is not of the form 2^(aj)(1+j)^b".to_string())
    } else {
        let dr = Rational::from_integer(prob.d as i128);
        let e = nf.rate / dr + alpha;
        let b = nf.log_exponent;
        let growing = e.is_positive() || (e.is_zero() && b.is_positive());
        if growing {
            (false, true, format!("integrand grows like u^{} (1+log u)^{}", fmt_rational(&e), fmt_rational(&b)))
        } else if e.is_zero() && b.is_zero() {
            // constant tail: the saturated integrand is constant
            (first_saturated.is_some(), false, "integrand is constant after saturation".into())
        } else {
            // d/dx [e x + B log2(1 + x/d)] ≤ 0 for x ≥ B/(−e ln 2) − d
            let x0 = if e.is_negative() && b.is_positive() {
                to_f64(&b) / (-to_f64(&e) * std::f64::consts::LN_2) - d
            } else {
                0.0
            };
            let ok = first_saturated.is_some() && x_top >= x0;
            (ok, false, format!("integrand decays like u^{} (1+log u)^{}", fmt_rational(&e), fmt_rational(&b)))
        }
    };
    Ok(EnA {
        value: best.0.exp2(),
        log2_value: best.0,
        argmax_log2_u: best.1,
        certified,
        truncated: !certified,
        divergent,
        note,
    })
}
