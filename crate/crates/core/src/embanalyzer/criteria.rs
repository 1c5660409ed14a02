//! Compactness and nuclearity verdicts.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::rational::{fmt_rational, Exponent, Rational};
use crate::seqdsl::{canonicalize, exact_boyd, NormalForm, SeqExpr};

use super::exponents::{dual_star, tong};
use super::membership::ellr_membership;
use super::problem::{EmbeddingProblem, SpaceScale};
use super::verdict::{Evidence, Status, Target, Verdict};

pub const CITE_COMPACT: &str = "generalised-compactness";
pub const CITE_NUCLEAR: &str = "vector-valued-tong";
pub const CITE_F_NUCLEAR: &str = "f-scale-boyd";
pub const CITE_F_COMPACT: &str = "via-B-sandwich";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    Compact,
    Nuclear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    /// `σ^{−1}·τ·2^{jd(1/p1−1/p2)}·2^{jd/e}` in simplified form.
    pub sequence: SeqExpr,
    /// `e = p*` (compact) or `t(p1,p2)` (nuclear).
    pub block_exponent: Exponent,
    /// `q*` or `t(q1,q2)`.
    pub target: Exponent,
    /// Set iff the target exponent is `∞`, where `ℓ_∞` is replaced by `c_0`.
    pub c0: bool,
}

impl Criterion {
    pub fn target_space(&self) -> Target {
        Target::new(self.target, self.c0)
    }
}

pub fn criterion_sequence(prob: &EmbeddingProblem, kind: CriterionKind) -> Result<Criterion, AnalysisError> {
    prob.validate()?;
    let (block_exponent, target) = match kind {
        CriterionKind::Compact => (dual_star(prob.p1, prob.p2), dual_star(prob.q1, prob.q2)),
        CriterionKind::Nuclear => {
            prob.require_banach()?;
            (tong(prob.p1, prob.p2)?, tong(prob.q1, prob.q2)?)
        }
    };
    let sequence = criterion_expr(prob, block_exponent.recip());
    Ok(Criterion { sequence, block_exponent, target, c0: target.is_infinite() })
}

/// `σ^{−1}τ·2^{jd(1/p1 − 1/p2 + extra)}`, simplified.
pub(crate) fn criterion_expr(prob: &EmbeddingProblem, extra: Rational) -> SeqExpr {
    let d = Rational::from_integer(prob.d as i128);
    let rate = d * (prob.p1.recip() - prob.p2.recip() + extra);
    let raw = SeqExpr::product(vec![prob.sigma.clone().inverse(), prob.tau.clone(), SeqExpr::geometric(rate)]);
    NormalForm::of(&raw).to_expr()
}

/// Compactness of `id : B^σ_{p1,q1} → B^τ_{p2,q2}` (quasi-Banach range
/// admitted). F-scale problems go through [`f_space_compactness`].
pub fn compactness(prob: &EmbeddingProblem) -> Result<Verdict, AnalysisError> {
    if prob.scale == SpaceScale::F {
        return f_space_compactness(prob);
    }
    let c = criterion_sequence(prob, CriterionKind::Compact)?;
    Ok(with_context(ellr_membership(&c.sequence, c.target, c.c0), prob, &c, CITE_COMPACT))
}

/// Nuclearity on the B-scale; the Banach range is required.
pub fn nuclearity(prob: &EmbeddingProblem) -> Result<Verdict, AnalysisError> {
    if prob.scale == SpaceScale::F {
        return Err(AnalysisError::WrongScale("use f_space_nuclearity for the F-scale".into()));
    }
    let c = criterion_sequence(prob, CriterionKind::Nuclear)?;
    Ok(with_context(ellr_membership(&c.sequence, c.target, c.c0), prob, &c, CITE_NUCLEAR))
}

fn with_context(mut v: Verdict, prob: &EmbeddingProblem, c: &Criterion, citation: &str) -> Verdict {
    let e_name = if citation == CITE_NUCLEAR { "t(p1,p2)" } else { "p*" };
    let r_name = if citation == CITE_NUCLEAR { "t(q1,q2)" } else { "q*" };
    v.evidence
        .comparisons
        .insert(0, format!("{e_name} = {}, {r_name} = {}, d = {}", c.block_exponent, c.target, prob.d));
    v.citation = citation.into();
    v
}

/// F-scale compactness through `B_{p,min(p,q)} ⊂ F_{p,q} ⊂ B_{p,max(p,q)}`.
///
/// The criterion sequence does not depend on `q`; only the target `q*`
/// moves. Compactness of `B_{p1,max} → B_{p2,min}` is sufficient and
/// compactness of `B_{p1,min} → B_{p2,max}` is necessary.
pub fn f_space_compactness(prob: &EmbeddingProblem) -> Result<Verdict, AnalysisError> {
    prob.validate()?;
    let b = |q1: Exponent, q2: Exponent| EmbeddingProblem { q1, q2, scale: SpaceScale::B, ..prob.clone() };
    let sufficient = compactness(&b(prob.p1.max(prob.q1), prob.p2.min(prob.q2)))?;
    let necessary = compactness(&b(prob.p1.min(prob.q1), prob.p2.max(prob.q2)))?;
    let (status, unresolved) = if sufficient.holds() {
        (Status::Holds, None)
    } else if necessary.fails() {
        (Status::Fails, None)
    } else {
        (
            Status::Inconclusive,
            Some(format!(
                "membership flips between the sandwich targets {} and {}",
                sufficient.target, necessary.target
            )),
        )
    };
    let mut evidence = Evidence {
        method: "via-B-sandwich".into(),
        profile: sufficient.evidence.profile.clone(),
        comparisons: vec![
            format!("sufficient B-embedding (target {}): {}", sufficient.target, sufficient.status),
            format!("necessary B-embedding (target {}): {}", necessary.target, necessary.status),
        ],
        notes: Vec::new(),
        unresolved,
    };
    evidence.comparisons.extend(sufficient.evidence.comparisons.iter().cloned());
    let target = if status == Status::Fails { necessary.target } else { sufficient.target };
    Ok(Verdict {
        status,
        tested_sequence: sufficient.tested_sequence,
        target,
        evidence,
        citation: CITE_F_COMPACT.into(),
    })
}

/// F-scale nuclearity from the Boyd indices of
/// `γ_j = σ_j^{−1}τ_j 2^{jd(1/p1−1/p2)} 2^{jd/t(p1,p2)}`.
pub fn f_space_nuclearity(prob: &EmbeddingProblem) -> Result<Verdict, AnalysisError> {
    prob.validate()?;
    if prob.scale != SpaceScale::F {
        return Err(AnalysisError::WrongScale("f_space_nuclearity needs scale F".into()));
    }
    prob.require_banach()?;
    let c = criterion_sequence(prob, CriterionKind::Nuclear)?;
    let tail = c.sequence.tail();
    let (lower, upper) = exact_boyd(&NormalForm::of(&tail)).expect("tails are table-free");
    let mut comparisons =
        vec![format!("Boyd indices of gamma: lower = {}, upper = {}", fmt_rational(&lower), fmt_rational(&upper))];
    let (status, unresolved) = if upper.is_negative() {
        comparisons.push("upper index < 0".into());
        (Status::Holds, None)
    } else if lower.is_positive() {
        comparisons.push("lower index > 0".into());
        (Status::Fails, None)
    } else {
        (
            Status::Inconclusive,
            Some(format!("Boyd band [{}, {}] contains 0", fmt_rational(&lower), fmt_rational(&upper))),
        )
    };
    Ok(Verdict {
        status,
        tested_sequence: c.sequence.clone(),
        target: c.target_space(),
        evidence: Evidence {
            method: "boyd-indices".into(),
            profile: Some(canonicalize(&tail)),
            comparisons,
            notes: Vec::new(),
            unresolved,
        },
        citation: CITE_F_NUCLEAR.into(),
    })
}

/// Nuclearity on either scale.
pub fn nuclearity_any(prob: &EmbeddingProblem) -> Result<Verdict, AnalysisError> {
    match prob.scale {
        SpaceScale::B => nuclearity(prob),
        SpaceScale::F => f_space_nuclearity(prob),
    }
}
