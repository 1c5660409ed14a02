//! Parameter functions `ω : (0,1] → (0,∞)` with the two-sided power
//! condition
//!
//! ```text
//! ω(t1)·t1^{−L} ≥ c·ω(t2)·t2^{−L},   c·ω(t1)·t1^L ≤ ω(t2)·t2^L,   0 < t1 ≤ t2 ≤ 1,
//! ```
//!
//! and the admissible sequence `σ_j = 1/ω(2^{−j})`.
//!
//! An `ω` is represented as a sequence in `u = log₂(1/t)`, see
//! [`crate::seqdsl::parse_omega`].

use serde::{Deserialize, Serialize};

use crate::error::SequenceError;
use crate::seqdsl::{serde_expr, SeqExpr};

use super::admissible::{certify_admissible, AdmissibilityCertificate};

/// Grid `u ∈ {0, …, U}` on which the condition is checked.
pub const OMEGA_WINDOW: u64 = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdmundsNetrusov {
    #[serde(with = "serde_expr")]
    pub sigma: SeqExpr,
    pub l: f64,
    pub c: f64,
    /// `d0 = c·2^{−L}`, `d1 = c^{−1}·2^L`.
    pub certificate: AdmissibilityCertificate,
}

/// `σ_j = 1/ω(2^{−j})` with constants `(L, c)`.
///
/// Without user constants, `L` is the largest absolute one-step log-ratio of
/// `u ↦ ω(2^{−u})` (proven for all integer `u`) and `c = 1`. User constants
/// are checked on the grid and a violating pair `(t1, t2)` is reported.
pub fn from_edmunds_netrusov(omega: &SeqExpr, constants: Option<(f64, f64)>) -> Result<EdmundsNetrusov, SequenceError> {
    omega.validate()?;
    let logs: Vec<f64> = (0..=OMEGA_WINDOW).map(|u| omega.eval_log2(u)).collect();
    if let Some(u) = logs.iter().position(|v| !v.is_finite()) {
        return Err(SequenceError::OmegaNonPositive { t: (-(u as f64)).exp2() });
    }
    let (l, c) = match constants {
        Some((l, c)) => {
            if !(l > 0.0 && c > 0.0) {
                return Err(SequenceError::Invalid("L and c must be positive".into()));
            }
            check_condition(&logs, l, c)?;
            (l, c)
        }
        None => {
            let cert = certify_admissible(omega, OMEGA_WINDOW);
            let l = cert.log2_d0.abs().max(cert.log2_d1.abs());
            (if l > 0.0 { l } else { 1.0 }, 1.0)
        }
    };
    let sigma = SeqExpr::power(omega.clone(), -crate::rational::int(1));
    let window_cert = certify_admissible(&sigma, OMEGA_WINDOW);
    let certificate = AdmissibilityCertificate {
        d0: c * (-l).exp2(),
        d1: l.exp2() / c,
        exact: constants.is_none(),
        log2_d0: c.log2() - l,
        log2_d1: l - c.log2(),
        exact_log2: None,
        ..window_cert
    };
    Ok(EdmundsNetrusov { sigma, l, c, certificate })
}

/// In `W_u = log₂ ω(2^{−u})`, for `u1 ≥ u2` the condition reads
/// `log₂c − L(u1−u2) ≤ W_{u1} − W_{u2} ≤ −log₂c + L(u1−u2)`.
fn check_condition(logs: &[f64], l: f64, c: f64) -> Result<(), SequenceError> {
    let lc = c.log2();
    let tol = 1e-9;
    for u1 in 0..logs.len() {
        for u2 in 0..=u1 {
            let du = (u1 - u2) as f64;
            let dw = logs[u1] - logs[u2];
            if dw < lc - l * du - tol || dw > -lc + l * du + tol {
                return Err(SequenceError::OmegaCondition { t1: (-(u1 as f64)).exp2(), t2: (-(u2 as f64)).exp2() });
            }
        }
    }
    Ok(())
}
