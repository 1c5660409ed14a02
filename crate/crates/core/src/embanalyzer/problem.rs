use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::rational::Exponent;
use crate::seqdsl::{serde_expr, SeqExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceScale {
    B,
    F,
}

impl fmt::Display for SpaceScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceScale::B => "B",
            SpaceScale::F => "F",
        })
    }
}

/// `id : A^σ_{p1,q1}(Ω) → A^τ_{p2,q2}(Ω)` on a bounded domain in `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingProblem {
    #[serde(with = "serde_expr")]
    pub sigma: SeqExpr,
    #[serde(with = "serde_expr")]
    pub tau: SeqExpr,
    pub p1: Exponent,
    pub q1: Exponent,
    pub p2: Exponent,
    pub q2: Exponent,
    #[serde(rename = "dim")]
    pub d: u32,
    #[serde(default = "default_scale")]
    pub scale: SpaceScale,
}

fn default_scale() -> SpaceScale {
    SpaceScale::B
}

impl EmbeddingProblem {
    /// Besov-scale problem.
    pub fn besov(sigma: SeqExpr, tau: SeqExpr, p1: Exponent, q1: Exponent, p2: Exponent, q2: Exponent, d: u32) -> Self {
        EmbeddingProblem { sigma, tau, p1, q1, p2, q2, d, scale: SpaceScale::B }
    }

    pub fn with_scale(mut self, scale: SpaceScale) -> Self {
        self.scale = scale;
        self
    }

    /// Structural checks shared by every query.
    pub fn validate(&self) -> Result<(), AnalysisError> {
        if self.d == 0 {
            return Err(AnalysisError::BadDimension);
        }
        for (name, e) in [("sigma", &self.sigma), ("tau", &self.tau)] {
            e.validate().map_err(|err| AnalysisError::NotAdmissible(name, err.to_string()))?;
        }
        for p in [self.p1, self.q1, self.p2, self.q2] {
            if !p.is_positive() {
                return Err(AnalysisError::Precondition(format!("exponent {p} must be positive")));
            }
        }
        if self.scale == SpaceScale::F && (self.p1.is_infinite() || self.p2.is_infinite()) {
            return Err(AnalysisError::InfiniteP(format!("p1 = {}, p2 = {}", self.p1, self.p2)));
        }
        Ok(())
    }

    pub fn is_banach(&self) -> bool {
        [self.p1, self.q1, self.p2, self.q2].iter().all(Exponent::is_banach)
    }

    pub fn require_banach(&self) -> Result<(), AnalysisError> {
        if self.is_banach() {
            Ok(())
        } else {
            Err(AnalysisError::QuasiBanach(format!(
                "p1 = {}, q1 = {}, p2 = {}, q2 = {}",
                self.p1, self.q1, self.p2, self.q2
            )))
        }
    }
}
