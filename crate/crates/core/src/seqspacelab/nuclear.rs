use serde::{Deserialize, Serialize};

use crate::embanalyzer::tong;
use crate::error::LabError;
use crate::rational::Exponent;

use super::section::{lp_norm, FiniteSection};

/// `‖(β_j^{−1} M_j^{1/t(p1,p2)})_j | ℓ_{t(q1,q2)}‖`.
pub fn nuclear_norm_tong(s: &FiniteSection) -> Result<f64, LabError> {
    require_banach(s)?;
    let t_p = tong(s.p1, s.p2)?;
    let t_q = tong(s.q1, s.q2)?;
    let inv_t = t_p.to_f64().recip();
    let terms: Vec<f64> = s.beta.iter().zip(&s.m).map(|(b, &m)| (m as f64).powf(inv_t) / b).collect();
    Ok(lp_norm(&terms, t_q))
}

fn require_banach(s: &FiniteSection) -> Result<(), LabError> {
    s.validate()?;
    if s.is_banach() {
        Ok(())
    } else {
        Err(LabError::QuasiBanach(format!("p1 = {}, q1 = {}, p2 = {}, q2 = {}", s.p1, s.q1, s.p2, s.q2)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleCase {
    /// Multiple of the identity of one space: `ν(id_X) = dim X`.
    Identity,
    /// `ℓ_∞^n` source: `ν(T) = Σ ‖T e_i‖`.
    EllInfSource,
    /// Diagonal operator between Hilbert spaces: trace norm.
    HilbertDiagonal,
    /// Coordinate representation `Σ e_i* ⊗ e_i`.
    Representation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NuclearOracle {
    Exact { value: f64, case: OracleCase },
    UpperBound { value: f64, case: OracleCase },
}

impl NuclearOracle {
    pub fn value(&self) -> f64 {
        match self {
            NuclearOracle::Exact { value, .. } | NuclearOracle::UpperBound { value, .. } => *value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NuclearOracle::Exact { .. })
    }
}

/// Nuclear norm of a section computed without the Tong formula.
pub fn nuclear_norm_oracle(s: &FiniteSection) -> Result<NuclearOracle, LabError> {
    require_banach(s)?;
    // Σ_i ‖e_i*‖_{X*} ‖e_i‖_Y with ‖e_i*‖ = β_j^{−1} and ‖e_i‖_Y = 1
    let coordinate_sum: f64 = s.beta.iter().zip(&s.m).map(|(b, &m)| m as f64 / b).sum();
    let single_level = s.m.len() == 1;
    let constant_beta = s.beta.windows(2).all(|w| w[0] == w[1]);
    let two = Exponent::int(2);

    if s.p1 == s.p2 && (s.q1 == s.q2 || single_level) && constant_beta {
        let n = s.dim() as f64;
        return Ok(NuclearOracle::Exact { value: n / s.beta[0], case: OracleCase::Identity });
    }
    if s.p1.is_infinite() && (s.q1.is_infinite() || single_level) {
        // x ↦ βx identifies the source with ℓ_∞^n
        return Ok(NuclearOracle::Exact { value: coordinate_sum, case: OracleCase::EllInfSource });
    }
    if [s.p1, s.q1, s.p2, s.q2].iter().all(|&p| p == two) {
        let trace: f64 = s.diagonal().iter().map(|v| v.abs()).sum();
        return Ok(NuclearOracle::Exact { value: trace, case: OracleCase::HilbertDiagonal });
    }
    Ok(NuclearOracle::UpperBound { value: coordinate_sum, case: OracleCase::Representation })
}
