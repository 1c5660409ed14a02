//! Asymptotic formulas for the entropy numbers `e_k` of compact embeddings.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::rational::{fmt_rational, serde_opt_rational, Exponent, Rational};
use crate::seqcore::{is_almost_strongly_increasing, Decision};
use crate::seqdsl::{NormalForm, SeqExpr};

use super::criteria::{compactness, criterion_expr};
use super::exponents::dual_star;
use super::problem::{EmbeddingProblem, SpaceScale};

pub const CITE_NON_LIMITING: &str = "generalised-entropy";
pub const CITE_LOG_LIMITING: &str = "log-limiting-entropy";
pub const CITE_SV_LIMITING: &str = "slowly-varying-limiting";
pub const CITE_EDMUNDS_NETRUSOV: &str = "edmunds-netrusov-coupling";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    NonLimiting,
    LimitingCatalog,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnBranch {
    /// `β > 1/q* + 2α`.
    Above,
    /// `β = 1/q* + 2α`.
    Critical,
    /// `β < 1/q* + 2α`.
    Below,
}

/// Factor multiplying `k^{−u}(1+log k)^{−v}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Residual {
    None,
    /// `τ(k^{1/d})/σ(k^{1/d})` beyond the power and log parts, e.g. a ratio
    /// of slowly varying functions or an oscillating factor.
    Ratio {
        factor: String,
        d: u32,
    },
    /// `(∫_{k^{1/d}}^∞ Ψ(t)^{−q*} dt/t)^{1/q*}`.
    Integral {
        psi: String,
        q_star: Exponent,
        d: u32,
    },
    EdmundsNetrusov {
        branch: EnBranch,
    },
}

/// `e_k ∼ k^{−u} (1+log k)^{−v} · residual`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFormula {
    #[serde(with = "serde_opt_rational")]
    pub u: Option<Rational>,
    #[serde(with = "serde_opt_rational")]
    pub v: Option<Rational>,
    pub residual: Residual,
    pub validity: Validity,
    pub formula: String,
    pub citation: String,
}

impl RateFormula {
    fn new(u: Option<Rational>, v: Option<Rational>, residual: Residual, validity: Validity, citation: &str) -> Self {
        let formula = render(u, v, &residual);
        RateFormula { u, v, residual, validity, formula, citation: citation.into() }
    }

    fn inconclusive(why: &str) -> Self {
        RateFormula {
            u: None,
            v: None,
            residual: Residual::None,
            validity: Validity::Inconclusive,
            formula: why.into(),
            citation: String::new(),
        }
    }
}

fn render(u: Option<Rational>, v: Option<Rational>, residual: &Residual) -> String {
    let mut parts = Vec::new();
    if let Some(u) = u.filter(|u| !u.is_zero()) {
        parts.push(format!("k^(-{})", paren(&u)));
    }
    if let Some(v) = v.filter(|v| !v.is_zero()) {
        parts.push(format!("(1+log k)^(-{})", paren(&v)));
    }
    match residual {
        Residual::None | Residual::EdmundsNetrusov { .. } => {}
        Residual::Ratio { factor, d } => parts.push(format!("[{factor}](k^(1/{d}))")),
        Residual::Integral { psi, q_star, d } => {
            parts.push(format!("(int_{{k^(1/{d})}}^inf ({psi})(t)^(-{q_star}) dt/t)^(1/{q_star})"))
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn paren(r: &Rational) -> String {
    if r.is_integer() && !r.is_negative() {
        fmt_rational(r)
    } else {
        format!("({})", fmt_rational(r))
    }
}

/// Entropy-number asymptotics of a compact B-scale embedding.
///
/// If `σ_j τ_j^{−1} 2^{−jd(1/p1−1/p2)} 2^{−jd/p*}` has positive lower Boyd
/// index, `e_k ∼ τ(k^{1/d})/σ(k^{1/d})`. Otherwise the limiting catalog is
/// consulted: log perturbations with `p1 = p2`, `s1 = s2`; slowly varying
/// perturbations with `q1 > q2` (integral form); and the Edmunds–Netrusov
/// coupling `σ/τ·2^{−jdα} = (1+j)^β` with `α = 1/p1 − 1/p2 > 0`, `q2 ≤ q1`.
pub fn entropy_rate(prob: &EmbeddingProblem) -> Result<RateFormula, AnalysisError> {
    if prob.scale != SpaceScale::B {
        return Err(AnalysisError::WrongScale("entropy asymptotics are available on the B-scale".into()));
    }
    let compact = compactness(prob)?;
    if !compact.holds() {
        return Err(AnalysisError::NotCompact(format!("compactness {}", compact.status)));
    }
    let d = prob.d;
    let dr = Rational::from_integer(d as i128);
    let p_star = dual_star(prob.p1, prob.p2);
    let q_star = dual_star(prob.q1, prob.q2);
    let inverse_criterion = criterion_expr(prob, p_star.recip()).inverse();
    // σ/τ in normal form
    let ratio = NormalForm::of(&SeqExpr::product(vec![prob.sigma.tail(), prob.tau.tail().inverse()]));

    if is_almost_strongly_increasing(&inverse_criterion) == Decision::Yes {
        let (u, v, residual) = if ratio.has_oscillation() {
            let factor = format!("tau/sigma = {}", ratio.to_expr().inverse());
            (None, None, Residual::Ratio { factor, d })
        } else {
            let u = ratio.rate / dr;
            let v = ratio.log_exponent;
            let residual = match inverse_sv(&ratio) {
                Some(factor) => Residual::Ratio { factor, d },
                None => Residual::None,
            };
            (Some(u), Some(v), residual)
        };
        return Ok(RateFormula::new(u, v, residual, Validity::NonLimiting, CITE_NON_LIMITING));
    }

    let alpha = prob.p1.recip() - prob.p2.recip();
    let pure_log = !ratio.has_oscillation() && ratio.sv_count() == 0;

    if alpha.is_zero() && ratio.rate.is_zero() && !ratio.has_oscillation() {
        let b = ratio.log_exponent;
        if pure_log {
            let v = b - q_star.recip();
            return Ok(RateFormula::new(
                Some(Rational::zero()),
                Some(v),
                Residual::None,
                Validity::LimitingCatalog,
                CITE_LOG_LIMITING,
            ));
        }
        let psi = ratio.to_expr().to_string();
        if prob.q1 <= prob.q2 {
            return Ok(RateFormula::new(
                Some(Rational::zero()),
                Some(b),
                Residual::Ratio { factor: inverse_sv(&ratio).unwrap_or_default(), d },
                Validity::LimitingCatalog,
                CITE_SV_LIMITING,
            ));
        }
        return Ok(RateFormula::new(
            Some(Rational::zero()),
            None,
            Residual::Integral { psi, q_star, d },
            Validity::LimitingCatalog,
            CITE_SV_LIMITING,
        ));
    }

    if alpha.is_positive() && prob.q2 <= prob.q1 && pure_log && ratio.rate == dr * alpha {
        let beta = ratio.log_exponent;
        let iq = q_star.recip();
        if beta > iq {
            let two_alpha = alpha + alpha;
            let threshold = iq + two_alpha;
            let (branch, u, v) = if beta > threshold {
                (EnBranch::Above, alpha, beta - two_alpha - iq)
            } else if beta == threshold {
                (EnBranch::Critical, alpha, -(alpha + iq))
            } else {
                (EnBranch::Below, (beta + iq) / Rational::from_integer(2), Rational::zero())
            };
            return Ok(RateFormula::new(
                Some(u),
                Some(v),
                Residual::EdmundsNetrusov { branch },
                Validity::LimitingCatalog,
                CITE_EDMUNDS_NETRUSOV,
            ));
        }
    }
    Ok(RateFormula::inconclusive(
        "lower Boyd index of the inverse criterion sequence is not positive and no catalog entry applies",
    ))
}

/// `Ψ2/Ψ1` rendered from the slowly varying part of `σ/τ`, inverted.
fn inverse_sv(ratio: &NormalForm) -> Option<String> {
    let sv = NormalForm {
        coeff_log2: 0.0,
        rate: Rational::zero(),
        log_exponent: Rational::zero(),
        oscillation: Rational::zero(),
        opaque: Vec::new(),
        ..ratio.clone()
    };
    if sv.sv_count() == 0 {
        return None;
    }
    Some(sv.to_expr().inverse().to_string())
}
