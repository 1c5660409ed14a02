use serde::{Deserialize, Serialize};

use crate::embanalyzer::EmbeddingProblem;
use crate::error::LabError;
use crate::rational::{to_f64, Exponent};

pub const NORM_CAP: usize = 1_000_000;
pub const ENTROPY_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    FromProblem { problem: Box<EmbeddingProblem>, cube_volume: f64 },
    Manual,
}

/// Truncation of `id_β : ℓ_{q1}(β_j ℓ_{p1}^{M_j}) → ℓ_{q2}(ℓ_{p2}^{M_j})`
/// to the levels `0..=L`.
///
/// On the unweighted source `ℓ_{q1}(ℓ_{p1}^{M_j})` this is the diagonal map
/// with entry `β_j^{−1}` on every coordinate of block `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSection {
    pub beta: Vec<f64>,
    pub m: Vec<usize>,
    pub p1: Exponent,
    pub q1: Exponent,
    pub p2: Exponent,
    pub q2: Exponent,
    pub provenance: Provenance,
}

impl FiniteSection {
    pub fn manual(
        beta: Vec<f64>,
        m: Vec<usize>,
        p1: Exponent,
        q1: Exponent,
        p2: Exponent,
        q2: Exponent,
    ) -> Result<Self, LabError> {
        let s = FiniteSection { beta, m, p1, q1, p2, q2, provenance: Provenance::Manual };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if self.beta.is_empty() || self.beta.len() != self.m.len() {
            return Err(LabError::Invalid(format!("beta has {} levels, M has {}", self.beta.len(), self.m.len())));
        }
        if let Some(b) = self.beta.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(LabError::Invalid(format!("weight {b} is not a positive real")));
        }
        if self.m.contains(&0) {
            return Err(LabError::Invalid("block sizes must be positive".into()));
        }
        for p in [self.p1, self.q1, self.p2, self.q2] {
            if !p.is_positive() {
                return Err(LabError::Invalid(format!("exponent {p} must be positive")));
            }
        }
        Ok(())
    }

    /// Top level `L`.
    pub fn top(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.m.iter().sum()
    }

    pub fn is_banach(&self) -> bool {
        [self.p1, self.q1, self.p2, self.q2].iter().all(Exponent::is_banach)
    }

    pub fn require_dim(&self, cap: usize) -> Result<usize, LabError> {
        let n = self.dim();
        if n > cap {
            Err(LabError::CapExceeded { n, cap })
        } else {
            Ok(n)
        }
    }

    /// Multiplies every weight by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        FiniteSection { beta: self.beta.iter().map(|b| b * factor).collect(), ..self.clone() }
    }

    /// Diagonal entries `β_{j(i)}^{−1}`, coordinate by coordinate.
    pub fn diagonal(&self) -> Vec<f64> {
        self.beta.iter().zip(&self.m).flat_map(|(b, &m)| std::iter::repeat(1.0 / b).take(m)).collect()
    }

    /// Block index of every coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        self.m.iter().enumerate().flat_map(|(j, &m)| std::iter::repeat(j).take(m)).collect()
    }

    /// `‖x‖` in `ℓ_{q1}(β_j ℓ_{p1}^{M_j})`.
    pub fn source_norm(&self, x: &[f64]) -> f64 {
        let blocks = self.blocks(x).map(|(j, xj)| self.beta[j] * lp_norm(xj, self.p1));
        lp_norm_iter(blocks, self.q1)
    }

    /// `‖x‖` in `ℓ_{q2}(ℓ_{p2}^{M_j})`.
    pub fn target_norm(&self, x: &[f64]) -> f64 {
        let blocks = self.blocks(x).map(|(_, xj)| lp_norm(xj, self.p2));
        lp_norm_iter(blocks, self.q2)
    }

    fn blocks<'a>(&'a self, x: &'a [f64]) -> impl Iterator<Item = (usize, &'a [f64])> + 'a {
        let mut start = 0;
        self.m.iter().enumerate().map(move |(j, &m)| {
            let block = &x[start..start + m];
            start += m;
            (j, block)
        })
    }
}

pub fn lp_norm(x: &[f64], p: Exponent) -> f64 {
    lp_norm_iter(x.iter().copied(), p)
}

/// `(Σ|x_i|^p)^{1/p}`, or the maximum for `p = ∞`.
pub fn lp_norm_iter(x: impl Iterator<Item = f64>, p: Exponent) -> f64 {
    match p {
        Exponent::Infinite => x.fold(0.0, |acc, v| acc.max(v.abs())),
        Exponent::Finite(p) => {
            let p = to_f64(&p);
            let xs: Vec<f64> = x.map(f64::abs).collect();
            let scale = xs.iter().cloned().fold(0.0, f64::max);
            if scale == 0.0 {
                return 0.0;
            }
            scale * xs.iter().map(|v| (v / scale).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}

/// `β_j = σ_j τ_j^{−1} 2^{−jd(1/p1−1/p2)}`, `M_j = round(c·2^{jd})`.
pub fn finite_section(prob: &EmbeddingProblem, top: usize, c: f64, cap: usize) -> Result<FiniteSection, LabError> {
    prob.validate()?;
    if !(c.is_finite() && c >= 1.0) {
        return Err(LabError::Invalid(format!("cube volume c = {c} must be at least 1")));
    }
    let d = prob.d as f64;
    let alpha = to_f64(&(prob.p1.recip() - prob.p2.recip()));
    let mut n = 0usize;
    let mut m = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let mj = (c * (j as f64 * d).exp2()).round();
        if !mj.is_finite() || mj > cap as f64 {
            return Err(LabError::CapExceeded { n: usize::MAX, cap });
        }
        n += mj as usize;
        if n > cap {
            return Err(LabError::CapExceeded { n, cap });
        }
        m.push(mj as usize);
    }
    let beta = (0..=top as u64)
        .map(|j| {
            let log2 = prob.sigma.log2_value(j) - prob.tau.log2_value(j) - j as f64 * d * alpha;
            log2.exp2()
        })
        .collect();
    let s = FiniteSection {
        beta,
        m,
        p1: prob.p1,
        q1: prob.q1,
        p2: prob.p2,
        q2: prob.q2,
        provenance: Provenance::FromProblem { problem: Box::new(prob.clone()), cube_volume: c },
    };
    s.validate()?;
    Ok(s)
}

/// Per-block norm factor `ν_j = β_j^{−1}·(1 or M_j^{1/p2−1/p1})`.
pub fn block_factors(s: &FiniteSection) -> Vec<f64> {
    let gap = to_f64(&(s.p2.recip() - s.p1.recip()));
    s.beta.iter().zip(&s.m).map(|(b, &m)| if gap > 0.0 { (m as f64).powf(gap) / b } else { 1.0 / b }).collect()
}

/// `sup_j ν_j` if `q1 ≤ q2`, else `‖ν‖_r` with `1/r = 1/q2 − 1/q1`.
pub fn embedding_norm_closed(s: &FiniteSection) -> f64 {
    let nu = block_factors(s);
    let gap = s.q2.recip() - s.q1.recip();
    if gap <= num_traits::Zero::zero() {
        nu.into_iter().fold(0.0, f64::max)
    } else {
        lp_norm(&nu, Exponent::from_recip(gap))
    }
}
