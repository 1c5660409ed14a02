use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Exponent;
use crate::seqdsl::{serde_expr, SeqExpr, SequenceProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Space in which membership of the criterion sequence is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum Target {
    /// `ℓ_r` with `r < ∞`.
    Ell {
        r: Exponent,
    },
    /// Null sequences; replaces `ℓ_∞` in the compactness criterion.
    C0,
    EllInf,
}

impl Target {
    pub fn new(r: Exponent, c0: bool) -> Self {
        match (r, c0) {
            (Exponent::Infinite, true) => Target::C0,
            (Exponent::Infinite, false) => Target::EllInf,
            (r, _) => Target::Ell { r },
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Ell { r } => write!(f, "l_{r}"),
            Target::C0 => f.write_str("c_0"),
            Target::EllInf => f.write_str("l_inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Evidence {
    /// `exact-profile`, `boyd-indices`, `via-B-sandwich`, ...
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<SequenceProfile>,
    pub comparisons: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    /// Names the comparison that could not be decided.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unresolved: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(with = "serde_expr")]
    pub tested_sequence: SeqExpr,
    pub target: Target,
    pub evidence: Evidence,
    pub citation: String,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn with_citation(mut self, citation: &str) -> Self {
        self.citation = citation.into();
        self
    }
}
