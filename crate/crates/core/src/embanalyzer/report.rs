//! Combined analysis with a stable JSON layout.

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;

use super::criteria::{compactness, nuclearity_any};
use super::entropy::{entropy_rate, RateFormula, Validity};
use super::problem::{EmbeddingProblem, SpaceScale};
use super::verdict::{Evidence, Status, Target, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisKind {
    Compact,
    Nuclear,
    Entropy,
    /// Compactness, then nuclearity and entropy where they apply.
    Classify,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: AnalysisKind,
    pub problem: EmbeddingProblem,
    pub criterion_sequence: String,
    pub target: Target,
    pub status: Status,
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nuclearity: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rate: Option<RateFormula>,
    pub citations: Vec<String>,
}

impl Report {
    fn from_verdict(kind: AnalysisKind, prob: &EmbeddingProblem, v: Verdict) -> Self {
        Report {
            kind,
            problem: prob.clone(),
            criterion_sequence: v.tested_sequence.to_string(),
            target: v.target,
            status: v.status,
            evidence: v.evidence,
            nuclearity: None,
            rate: None,
            citations: vec![v.citation],
        }
    }

    /// `true` if some part of the report could not be decided.
    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
            || self.nuclearity.as_ref().is_some_and(|v| v.status == Status::Inconclusive)
            || self.rate.as_ref().is_some_and(|r| r.validity == Validity::Inconclusive)
    }
}

pub fn analyze(prob: &EmbeddingProblem, kind: AnalysisKind) -> Result<Report, AnalysisError> {
    prob.validate()?;
    match kind {
        AnalysisKind::Compact => Ok(Report::from_verdict(kind, prob, compactness(prob)?)),
        AnalysisKind::Nuclear => Ok(Report::from_verdict(kind, prob, nuclearity_any(prob)?)),
        AnalysisKind::Entropy => {
            let mut report = Report::from_verdict(kind, prob, compactness(prob)?);
            let rate = entropy_rate(prob)?;
            report.citations.push(rate.citation.clone());
            report.rate = Some(rate);
            Ok(report)
        }
        AnalysisKind::Classify => {
            let compact = compactness(prob)?;
            let is_compact = compact.holds();
            let mut report = Report::from_verdict(kind, prob, compact);
            if prob.is_banach() {
                let nuc = nuclearity_any(prob)?;
                report.citations.push(nuc.citation.clone());
                report.nuclearity = Some(nuc);
            } else {
                report.evidence.notes.push("nuclearity skipped: quasi-Banach parameters".into());
            }
            if is_compact && prob.scale == SpaceScale::B {
                let rate = entropy_rate(prob)?;
                if !rate.citation.is_empty() {
                    report.citations.push(rate.citation.clone());
                }
                report.rate = Some(rate);
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::{Exponent, SeqExpr};

    #[test]
    fn classify_layout() {
        let p = EmbeddingProblem::besov(
            SeqExpr::geometric(int(2)),
            SeqExpr::one(),
            Exponent::int(2),
            Exponent::int(2),
            Exponent::int(2),
            Exponent::int(2),
            1,
        );
        let r = analyze(&p, AnalysisKind::Classify).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!(r.nuclearity.as_ref().unwrap().holds());
        let json = serde_json::to_value(&r).unwrap();
        for key in ["problem", "criterion_sequence", "target", "status", "evidence", "rate", "citations"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["rate"]["u"], "2");
        let back: Report = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
