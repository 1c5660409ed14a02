//! Decay of `e_{2n}` along growing sections compared with
//! `β_L^{−1} M_L^{−(1/p1−1/p2)}`.

use serde::{Deserialize, Serialize};

use crate::embanalyzer::{criterion_sequence, CriterionKind, EmbeddingProblem};
use crate::error::LabError;
use crate::rational::to_f64;
use crate::seqcore::{is_almost_strongly_increasing, Decision};

use super::entropy::{entropy_bounds, K_CAP};
use super::section::{finite_section, ENTROPY_CAP};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub level: usize,
    pub log2_m_top: f64,
    /// `k = 2·Σ_{j≤L} M_j`.
    pub k: u32,
    pub upper: f64,
    pub lower: f64,
    pub predicted_log2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub points: Vec<RatePoint>,
    /// Least-squares slope of `log2 upper` against `log2 M_L`.
    pub slope: f64,
    pub residuals: Vec<f64>,
    /// Same fit applied to the predicted values.
    pub predicted_slope: f64,
    pub decaying: bool,
}

impl RateFit {
    /// `slope / predicted_slope`, if the prediction decays.
    pub fn slope_ratio(&self) -> Option<f64> {
        (self.predicted_slope.abs() > 1e-12).then(|| self.slope / self.predicted_slope)
    }
}

/// Fits the entropy upper bounds at `k = 2n` over the levels `ls`; the
/// problem must be in the non-limiting regime.
pub fn rate_fit(prob: &EmbeddingProblem, ls: &[usize], c: f64) -> Result<RateFit, LabError> {
    let inverse = criterion_sequence(prob, CriterionKind::Compact)?.sequence.inverse();
    if is_almost_strongly_increasing(&inverse) != Decision::Yes {
        return Err(LabError::Limiting(format!("lower Boyd index of {inverse} is not certified positive")));
    }
    rate_fit_unchecked(prob, ls, c)
}

/// [`rate_fit`] without the regime check; non-decay is reported through
/// `decaying`.
pub fn rate_fit_unchecked(prob: &EmbeddingProblem, ls: &[usize], c: f64) -> Result<RateFit, LabError> {
    if ls.len() < 2 {
        return Err(LabError::Invalid("a slope needs at least two levels".into()));
    }
    let alpha = to_f64(&(prob.p1.recip() - prob.p2.recip()));
    let mut points = Vec::with_capacity(ls.len());
    for &level in ls {
        let s = finite_section(prob, level, c, ENTROPY_CAP)?;
        let k = 2 * s.dim() as u32;
        if k > K_CAP {
            return Err(LabError::KTooLarge { k, cap: K_CAP });
        }
        let b = entropy_bounds(&s, k)?;
        let log2_m_top = (s.m[level] as f64).log2();
        let predicted_log2 = -s.beta[level].log2() - alpha * log2_m_top;
        points.push(RatePoint { level, log2_m_top, k, upper: b.upper, lower: b.lower, predicted_log2 });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.log2_m_top).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.upper.log2()).collect();
    let pred: Vec<f64> = points.iter().map(|p| p.predicted_log2).collect();
    let (slope, intercept) = least_squares(&xs, &ys)?;
    let (predicted_slope, _) = least_squares(&xs, &pred)?;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (intercept + slope * x)).collect();
    Ok(RateFit { points, slope, residuals, predicted_slope, decaying: slope < -0.1 })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64), LabError> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LabError::Invalid("the levels give identical block sizes".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}
