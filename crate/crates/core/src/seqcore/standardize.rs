use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::SequenceError;
use crate::rational::{int, to_f64};
use crate::seqdsl::{serde_expr, NormalForm, SeqExpr};

use super::admissible::certify_admissible;

/// Number of explicitly tabulated values of the standardized sequence.
pub const STANDARDIZE_PREFIX: u64 = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardized {
    /// `β_j = σ_{k(j)}` for `j < 64`, then an equivalent closed form.
    #[serde(with = "serde_expr")]
    pub beta: SeqExpr,
    /// `k(j)` for the tabulated range.
    pub k: Vec<u64>,
    pub kappa0: u32,
    pub lambda0: f64,
    pub mu0: f64,
    pub mu1: f64,
}

/// Smallest `κ0 ≥ 1` with `λ0^{κ0} ≥ 2`, given `log₂ λ0 > 0`.
pub fn default_kappa0(log2_lambda0: f64) -> u32 {
    (1.0 / log2_lambda0 - 1e-12).ceil().max(1.0) as u32
}

/// Dyadic reindexing `β_j := σ_{k(j)}` with
/// `k(j) = min{k ≥ 0 : 2^{j−1} ≤ N_{k+κ0}}`.
///
/// `N` must be strongly increasing (certified lower step ratio `λ0 > 1`).
/// When both `σ` and `N` have non-oscillating tails
/// `σ ~ 2^{sj}(1+j)^{bσ}·Ψ` and `N ~ 2^{cj}(1+j)^{bN}`, the continuation
/// beyond the table is `2^{(s/c)j}(1+j)^{bσ − s·bN/c}·Ψ`, which is
/// equivalent to `σ_{k(j)}` because `k(j) = j/c − (bN/c)·log₂ j + O(1)`.
pub fn standardize(sigma: &SeqExpr, n: &SeqExpr, kappa0: Option<u32>) -> Result<Standardized, SequenceError> {
    let cert_n = certify_admissible(n, 64);
    if !cert_n.strongly_increasing() {
        return Err(SequenceError::NotStronglyIncreasing { lambda0: cert_n.d0 });
    }
    let log2_lambda0 = match cert_n.exact_log2 {
        Some((lo, _)) => to_f64(&lo),
        None => cert_n.log2_d0,
    };
    let kappa0 = match kappa0 {
        Some(k) => {
            let holds = match cert_n.exact_log2 {
                Some((lo, _)) => lo * int(k as i128) >= int(1),
                None => k as f64 * log2_lambda0 >= 1.0,
            };
            if k == 0 || !holds {
                return Err(SequenceError::KappaTooSmall { kappa0: k, lambda0: cert_n.d0 });
            }
            k
        }
        None => default_kappa0(log2_lambda0),
    };

    let n_tail = NormalForm::of(&n.tail());
    let s_tail = NormalForm::of(&sigma.tail());
    if n_tail.has_oscillation() || n_tail.sv_count() > 0 {
        return Err(SequenceError::NoContinuation("N must be of the form C·2^{cj}(1+j)^b".into()));
    }
    if s_tail.has_oscillation() {
        return Err(SequenceError::NoContinuation("sigma oscillates; no closed-form continuation".into()));
    }
    let c = n_tail.rate;
    if !c.is_positive() {
        return Err(SequenceError::NotStronglyIncreasing { lambda0: cert_n.d0 });
    }

    let mut ks = Vec::with_capacity(STANDARDIZE_PREFIX as usize);
    let mut k = 0u64;
    for j in 0..STANDARDIZE_PREFIX {
        let target = j as f64 - 1.0;
        while n.log2_value(k + kappa0 as u64) < target - 1e-9 {
            k += 1;
        }
        ks.push(k);
    }
    let prefix: Vec<f64> = ks.iter().map(|&k| sigma.eval(k).value.max(f64::MIN_POSITIVE)).collect();

    let s = s_tail.rate;
    let mut cont = NormalForm { rate: s / c, ..s_tail.clone() };
    cont.log_exponent = s_tail.log_exponent - s * n_tail.log_exponent / c;
    cont.coeff_log2 = 0.0;
    let beta = SeqExpr::table(prefix, cont.to_expr());

    let cert_s = certify_admissible(sigma, 64);
    let mu0 = 1f64.min(cert_s.d0.powi(kappa0 as i32));
    let mu1 = 1f64.max(cert_s.d1.powi(kappa0 as i32));
    Ok(Standardized { beta, k: ks, kappa0, lambda0: cert_n.d0, mu0, mu1 })
}
