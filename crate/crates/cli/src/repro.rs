//! Reproduction corpus: worked examples bound to runnable analyses.

use serde::{Deserialize, Serialize};

use gsembed::embanalyzer::{analyze, AnalysisKind, EmbeddingProblem, Status};
use gsembed::AnalysisError;

const CORPUS: &str = include_str!("corpus.json");

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Stated in the literature.
    Published,
    /// Worked out by hand from a published criterion.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub basis: Basis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub status: Tagged<Status>,
    /// Rendered rate formula for entropy cases.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rate: Option<Tagged<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproCase {
    pub id: String,
    pub problem: EmbeddingProblem,
    pub kind: AnalysisKind,
    pub expected: Expected,
    pub citation: String,
}

impl ReproCase {
    /// A case is published if every expected value it carries is.
    pub fn is_published(&self) -> bool {
        self.expected.status.basis == Basis::Published
            && self.expected.rate.as_ref().map_or(true, |r| r.basis == Basis::Published)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproOutcome {
    pub id: String,
    pub kind: AnalysisKind,
    pub expected: Expected,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReproOutcome {
    pub fn inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
    }
}

pub fn corpus() -> Vec<ReproCase> {
    serde_json::from_str(CORPUS).expect("embedded corpus is valid")
}

pub fn find(id: &str) -> Option<ReproCase> {
    corpus().into_iter().find(|c| c.id == id)
}

pub fn run_case(case: &ReproCase) -> ReproOutcome {
    let mut out = ReproOutcome {
        id: case.id.clone(),
        kind: case.kind,
        expected: case.expected.clone(),
        status: Status::Inconclusive,
        rate: None,
        pass: false,
        error: None,
    };
    let report = match analyze(&case.problem, case.kind) {
        Ok(r) => r,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.status = report.status;
    out.rate = report.rate.as_ref().map(|r| r.formula.clone());
    let status_ok = out.status == case.expected.status.value;
    let rate_ok = match &case.expected.rate {
        Some(want) => out.rate.as_deref() == Some(want.value.as_str()),
        None => true,
    };
    out.pass = status_ok && rate_ok;
    out
}

/// Runs every case of the corpus, or the named one.
pub fn reproduce(id: &str) -> Result<Vec<ReproOutcome>, AnalysisError> {
    if id == "all" {
        return Ok(corpus().iter().map(run_case).collect());
    }
    find(id).map(|c| vec![run_case(&c)]).ok_or_else(|| AnalysisError::Precondition(format!("unknown corpus id {id:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique() {
        let cases = corpus();
        let ids: HashSet<_> = cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), cases.len());
    }

    #[test]
    fn every_case_reproduces() {
        for case in corpus() {
            let out = run_case(&case);
            assert!(out.pass, "{}: {:?}", case.id, out);
        }
    }
}
