//! Two-sided bounds for the entropy numbers of small sections.
//!
//! `e_k(T)` is the infimal `ε` such that `2^{k−1}` balls of radius `ε` in the
//! target cover `T(B_X)`. Upper bounds come from explicit covers, lower
//! bounds from comparing volumes.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::LabError;
use crate::rational::{to_f64, Exponent};

use super::section::{block_factors, embedding_norm_closed, lp_norm, lp_norm_iter, FiniteSection, ENTROPY_CAP};

pub const K_CAP: u32 = 40;
/// Budget resolution: costs are counted in units of `1/BITS_RESOLUTION` bits.
const BITS_RESOLUTION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperMethod {
    Exact1d,
    LatticeNet,
    GreedyNet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerMethod {
    Volume,
    Exact1d,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyBoundReport {
    pub k: u32,
    pub lower: f64,
    pub upper: f64,
    pub method_upper: UpperMethod,
    pub method_lower: LowerMethod,
}

fn check_caps(s: &FiniteSection, k: u32) -> Result<usize, LabError> {
    s.validate()?;
    if k == 0 || k > K_CAP {
        return Err(LabError::KTooLarge { k, cap: K_CAP });
    }
    s.require_dim(ENTROPY_CAP)
}

/// Radius of a cover of `T(B_X)` by `2^{k−1}` balls.
///
/// The image lies in `Π_j K_j` with `K_j = β_j^{−1} B_{p1}^{M_j}`, so covers of
/// the blocks multiply: `N_j` balls of radius `r_j` give `Π N_j` balls of
/// radius `‖(r_j)_j‖_{q2}`. The bit budget `k − 1` is split over the blocks
/// by dynamic programming. Each block is covered by the better of
///
/// * a lattice net: `K_j` lies in the box `Π [−a, a]`, `a = β_j^{−1}`, and
///   cutting coordinate `i` into `m_i` cells gives radius `‖(a/m_i)_i‖_{p2}`;
/// * a greedy net (Banach targets): a maximal `ε`-separated subset of
///   `K_j ⊂ ν_j B_{p2}` has at most `(1 + 2ν_j/ε)^{M_j}` points.
///
/// A single ball of radius `‖T‖` at the origin is the fallback.
pub fn entropy_upper(s: &FiniteSection, k: u32) -> Result<(f64, UpperMethod), LabError> {
    let n = check_caps(s, k)?;
    if n == 1 {
        return Ok(((1.0 / s.beta[0]) * (-((k - 1) as f64)).exp2(), UpperMethod::Exact1d));
    }
    let (radius, method) = net_radius(s, k);
    let norm = embedding_norm_closed(s);
    if norm < radius {
        Ok((norm, UpperMethod::GreedyNet))
    } else {
        Ok((radius, method))
    }
}

/// `ceil(R·log2 m)`, rounded up for non-powers of two.
fn cost(m: u64) -> usize {
    if m.is_power_of_two() {
        BITS_RESOLUTION * m.trailing_zeros() as usize
    } else {
        ((m as f64).log2() * BITS_RESOLUTION as f64 + 1e-9).floor() as usize + 1
    }
}

/// `(m, cost)` pairs, the largest `m` for every affordable cost.
fn candidates(budget: usize) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for c in 0..=budget {
        let mut m = ((c as f64) / BITS_RESOLUTION as f64).exp2().floor() as u64;
        while m > 1 && cost(m) > c {
            m -= 1;
        }
        let m = m.max(1);
        if out.last().map_or(true, |&(prev, _)| m > prev) {
            out.push((m, cost(m)));
        }
    }
    out
}

/// Aggregation `Σ v^p` or `max v` along one norm.
#[derive(Clone, Copy)]
enum Agg {
    Sum(f64),
    Max,
}

impl Agg {
    fn of(p: Exponent) -> Self {
        match p {
            Exponent::Infinite => Agg::Max,
            Exponent::Finite(_) => Agg::Sum(p.to_f64()),
        }
    }

    fn lift(self, v: f64) -> f64 {
        match self {
            Agg::Sum(p) => v.powf(p),
            Agg::Max => v,
        }
    }

    fn join(self, a: f64, b: f64) -> f64 {
        match self {
            Agg::Sum(_) => a + b,
            Agg::Max => a.max(b),
        }
    }

    fn finish(self, v: f64) -> f64 {
        match self {
            Agg::Sum(p) => v.powf(1.0 / p),
            Agg::Max => v,
        }
    }
}

/// `out[b] = min_{c ≤ b} join(left[b−c], right[c])`.
fn convolve(agg: Agg, left: &[f64], right: &[f64]) -> Vec<f64> {
    let budget = left.len() - 1;
    (0..=budget).map(|b| (0..=b).map(|c| agg.join(left[b - c], right[c])).fold(f64::INFINITY, f64::min)).collect()
}

/// `m`-fold convolution power by repeated squaring.
fn convolve_power(agg: Agg, base: &[f64], mut m: usize) -> Vec<f64> {
    let mut acc: Option<Vec<f64>> = None;
    let mut sq = base.to_vec();
    loop {
        if m & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => convolve(agg, &a, &sq),
            });
        }
        m >>= 1;
        if m == 0 {
            break;
        }
        sq = convolve(agg, &sq, &sq);
    }
    acc.expect("block sizes are positive")
}

/// Per-block cover radius for every budget bin.
struct BlockCurve {
    radius: Vec<f64>,
    greedy: Vec<bool>,
}

fn block_curves(s: &FiniteSection, budget: usize) -> Vec<BlockCurve> {
    let cands = candidates(budget);
    let inner = Agg::of(s.p2);
    let nu = block_factors(s);
    // single coordinate of half-width 1: best lifted error per budget
    let mut unit = vec![f64::INFINITY; budget + 1];
    for &(m, c) in &cands {
        for slot in unit.iter_mut().skip(c) {
            *slot = slot.min(inner.lift(1.0 / m as f64));
        }
    }
    s.m.iter()
        .enumerate()
        .map(|(j, &mj)| {
            let lattice = convolve_power(inner, &unit, mj);
            let a = 1.0 / s.beta[j];
            let mut curve = BlockCurve { radius: Vec::new(), greedy: Vec::new() };
            for (b, &v) in lattice.iter().enumerate() {
                let lattice_r = a * inner.finish(v);
                // a maximal ε-separated set has at most (1 + 2ν/ε)^M points
                let per_coord = (b as f64 / (BITS_RESOLUTION * mj) as f64).exp2() - 1.0;
                let greedy_r =
                    if s.p2.is_banach() && per_coord > 0.0 { 2.0 * nu[j] / per_coord } else { f64::INFINITY };
                let (r, greedy) = if nu[j] <= lattice_r.min(greedy_r) {
                    (nu[j], false)
                } else if greedy_r < lattice_r {
                    (greedy_r, true)
                } else {
                    (lattice_r, false)
                };
                curve.radius.push(r);
                curve.greedy.push(greedy);
            }
            curve
        })
        .collect()
}

fn net_radius(s: &FiniteSection, k: u32) -> (f64, UpperMethod) {
    let budget = (k as usize - 1) * BITS_RESOLUTION;
    let curves = block_curves(s, budget);
    let outer = Agg::of(s.q2);
    let mut total: Option<Vec<f64>> = None;
    for c in &curves {
        let lifted: Vec<f64> = c.radius.iter().map(|&r| outer.lift(r)).collect();
        total = Some(match total {
            None => lifted,
            Some(t) => convolve(outer, &t, &lifted),
        });
    }
    let product = outer.finish(total.expect("sections have at least one level")[budget]);
    let any_greedy = curves.iter().any(|c| c.greedy.iter().any(|&g| g));
    let method = if any_greedy { UpperMethod::GreedyNet } else { UpperMethod::LatticeNet };
    let counted = counted_lattice_radius(s, k - 1);
    if counted < product {
        (counted, UpperMethod::LatticeNet)
    } else {
        (product, method)
    }
}

/// Mass resolution of the cell-counting histograms.
const MASS_BINS: usize = 256;

/// Lattice net restricted to the cells that meet the image.
///
/// Coordinates of block `j` are cut into `m_j` cells of half-width
/// `h_j = a_j/m_j`. A cell meets `T(B_X)` iff its point closest to the
/// origin, with coordinates `g_i = max(0, |c_i| − h_j)`, has source norm at
/// most 1. Those cells are counted with histograms over the source-norm mass,
/// rounding every mass down, which can only overcount. The cut sizes come from
/// `h_j = t·a_j^γ` with `t` found by bisection for a few `γ`.
fn counted_lattice_radius(s: &FiniteSection, bits: u32) -> f64 {
    let limit = (bits as f64).exp2();
    let a: Vec<f64> = s.beta.iter().map(|b| 1.0 / b).collect();
    let a_max = a.iter().cloned().fold(0.0, f64::max);
    let mut best = f64::INFINITY;
    for gamma in [0.0, 0.5, 1.0] {
        let cuts = |log_t: f64| -> Vec<u64> {
            a.iter()
                .map(|&aj| {
                    let h = log_t.exp2() * (aj / a_max).powf(gamma) * a_max;
                    (aj / h).ceil().clamp(1.0, 1e15) as u64
                })
                .collect()
        };
        let (mut lo, mut hi) = (a_max.log2() - 60.0, a_max.log2() + 1.0);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if count_cells(s, &cuts(mid)) <= limit {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = cuts(hi);
        if count_cells(s, &m) <= limit {
            let h: Vec<f64> = a.iter().zip(&m).map(|(aj, &mj)| aj / mj as f64).collect();
            let blocks = h.iter().zip(&s.m).map(|(&hj, &mj)| lp_norm(&vec![hj; mj], s.p2));
            best = best.min(lp_norm_iter(blocks, s.q2));
        }
    }
    best
}

/// Number of the `m` cells cutting `[−a, a]` whose distance from the origin
/// is below `x`.
fn cells_within(a: f64, m: u64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let h = a / m as f64;
    // gaps: 0 once, then (2t+1)h twice each for odd m; 2th twice each for even m
    let (first, offset) = if m % 2 == 1 { (1.0, 1.0) } else { (0.0, 0.0) };
    let sides = ((x / h - offset) / 2.0).ceil().max(0.0).min((m / 2) as f64);
    first + 2.0 * sides
}

/// Histogram convolution; bins hold masses rounded down.
fn count_convolve(agg: Agg, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; MASS_BINS + 1];
    for (i, &cx) in x.iter().enumerate().filter(|(_, c)| **c > 0.0) {
        for (j, &cy) in y.iter().enumerate().filter(|(_, c)| **c > 0.0) {
            let b = match agg {
                Agg::Sum(_) => i + j,
                Agg::Max => i.max(j),
            };
            if b <= MASS_BINS {
                out[b] += cx * cy;
            }
        }
    }
    out
}

fn count_power(agg: Agg, base: &[f64], mut m: usize) -> Vec<f64> {
    let mut acc: Option<Vec<f64>> = None;
    let mut sq = base.to_vec();
    loop {
        if m & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => count_convolve(agg, &a, &sq),
            });
        }
        m >>= 1;
        if m == 0 {
            break;
        }
        sq = count_convolve(agg, &sq, &sq);
    }
    acc.expect("block sizes are positive")
}

fn bin_down(mass: f64) -> Option<usize> {
    (mass <= 1.0 + 1e-12).then(|| ((mass * MASS_BINS as f64).floor() as usize).min(MASS_BINS))
}

/// Upper bound for the number of cells meeting `T(B_X)`.
fn count_cells(s: &FiniteSection, cuts: &[u64]) -> f64 {
    let inner = Agg::of(s.p1);
    let outer = Agg::of(s.q1);
    let mut total: Option<Vec<f64>> = None;
    for (j, &mj) in s.m.iter().enumerate() {
        // coordinate histogram of (β_j g)^{p1}, masses rounded down
        let a = 1.0 / s.beta[j];
        let mut coord = vec![0.0; MASS_BINS + 1];
        let mut below = 0.0;
        for (b, slot) in coord.iter_mut().enumerate() {
            let upper = inner.finish((b + 1) as f64 / MASS_BINS as f64) * a * (1.0 + 1e-12);
            let n = cells_within(a, cuts[j], upper);
            *slot = n - below;
            below = n;
        }
        let block = count_power(inner, &coord, mj);
        // re-bin the block mass z = β_j‖g_j‖_{p1} as z^{q1}
        let mut lifted = vec![0.0; MASS_BINS + 1];
        for (b, &c) in block.iter().enumerate().filter(|(_, c)| **c > 0.0) {
            let z = inner.finish(b as f64 / MASS_BINS as f64);
            if let Some(nb) = bin_down(outer.lift(z)) {
                lifted[nb] += c;
            }
        }
        total = Some(match total {
            None => lifted,
            Some(t) => count_convolve(outer, &t, &lifted),
        });
    }
    total.expect("sections have at least one level").iter().sum()
}

/// `ln vol` of the unit ball of `ℓ_q(ℓ_p^{M_j})` over the reals.
pub fn log_ball_volume(m: &[usize], p: Exponent, q: Exponent) -> f64 {
    let ip = to_f64(&p.recip());
    let iq = to_f64(&q.recip());
    let n: usize = m.iter().sum();
    let per_coord = std::f64::consts::LN_2 + ln_gamma(1.0 + ip);
    let blocks: f64 = m
        .iter()
        .map(|&mj| {
            let mj = mj as f64;
            mj * per_coord - ln_gamma(1.0 + mj * ip) + ln_gamma(1.0 + mj * iq)
        })
        .sum();
    blocks - ln_gamma(1.0 + n as f64 * iq)
}

/// `2^{−(k−1)/n} (vol T(B_X) / vol B_Y)^{1/n}`.
pub fn entropy_lower(s: &FiniteSection, k: u32) -> Result<(f64, LowerMethod), LabError> {
    let n = check_caps(s, k)?;
    if n == 1 {
        return Ok(((1.0 / s.beta[0]) * (-((k - 1) as f64)).exp2(), LowerMethod::Exact1d));
    }
    let log_det: f64 = s.beta.iter().zip(&s.m).map(|(b, &m)| -(m as f64) * b.ln()).sum();
    let log_ratio = log_det + log_ball_volume(&s.m, s.p1, s.q1) - log_ball_volume(&s.m, s.p2, s.q2);
    let v = (-((k - 1) as f64) / n as f64).exp2() * (log_ratio / n as f64).exp();
    Ok((v, LowerMethod::Volume))
}

pub fn entropy_bounds(s: &FiniteSection, k: u32) -> Result<EntropyBoundReport, LabError> {
    let (upper, method_upper) = entropy_upper(s, k)?;
    let (lower, method_lower) = entropy_lower(s, k)?;
    Ok(EntropyBoundReport { k, lower, upper, method_upper, method_lower })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativityCheck {
    pub k1: u32,
    pub k2: u32,
    /// Lower bound for `e_{k1+k2−1}(T)`.
    pub lhs_lower: f64,
    /// Upper bound for `e_{k1}(T_1) e_{k2}(T_2)`.
    pub rhs_upper: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyProperties {
    pub bounds: Vec<EntropyBoundReport>,
    pub norm: f64,
    pub monotone: bool,
    pub e1_bounded: bool,
    pub multiplicativity: Vec<MultiplicativityCheck>,
    pub violations: Vec<String>,
}

impl EntropyProperties {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks monotonicity in `k`, `e_1 ≤ ‖T‖`, the sandwich `lower ≤ upper` and
/// multiplicativity along `T = T_2 T_1`, where `T_1` and `T_2` both carry the
/// weights `β^{1/2}` and pass through `ℓ_{q2}(ℓ_{p1}^{M_j})`.
pub fn entropy_properties(s: &FiniteSection, ks: &[u32]) -> Result<EntropyProperties, LabError> {
    let mut ks: Vec<u32> = ks.to_vec();
    ks.push(1);
    ks.sort_unstable();
    ks.dedup();
    let bounds = ks.iter().map(|&k| entropy_bounds(s, k)).collect::<Result<Vec<_>, _>>()?;
    let norm = embedding_norm_closed(s);
    let mut violations = Vec::new();

    let monotone = bounds.windows(2).all(|w| w[1].upper <= w[0].upper * (1.0 + 1e-12));
    if !monotone {
        violations.push("upper bounds increase in k".into());
    }
    let e1_bounded = bounds[0].upper <= norm * (1.0 + 1e-9);
    if !e1_bounded {
        violations.push(format!("e_1 bound {} exceeds the norm {}", bounds[0].upper, norm));
    }
    for b in &bounds {
        if b.lower > b.upper * (1.0 + 1e-9) {
            violations.push(format!("k = {}: lower {} > upper {}", b.k, b.lower, b.upper));
        }
    }

    let half: Vec<f64> = s.beta.iter().map(|b| b.sqrt()).collect();
    let t1 = FiniteSection { beta: half.clone(), p2: s.p1, q2: s.q2, ..s.clone() };
    let t2 = FiniteSection { beta: half, p1: s.p1, q1: s.q2, ..s.clone() };
    let mut multiplicativity = Vec::new();
    for &k1 in &ks {
        for &k2 in &ks {
            let k = k1 + k2 - 1;
            if k > K_CAP {
                continue;
            }
            let lhs_lower = entropy_lower(s, k)?.0;
            let rhs_upper = entropy_upper(&t1, k1)?.0 * entropy_upper(&t2, k2)?.0;
            let ok = lhs_lower <= rhs_upper * (1.0 + 1e-9);
            if !ok {
                violations.push(format!("multiplicativity fails at k1 = {k1}, k2 = {k2}"));
            }
            multiplicativity.push(MultiplicativityCheck { k1, k2, lhs_lower, rhs_upper, ok });
        }
    }
    Ok(EntropyProperties { bounds, norm, monotone, e1_bounded, multiplicativity, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize, p: Exponent) -> FiniteSection {
        FiniteSection::manual(vec![1.0], vec![n], p, p, p, p).unwrap()
    }

    #[test]
    fn one_dimensional_is_exact() {
        let s = identity(1, Exponent::int(2));
        let b = entropy_bounds(&s, 3).unwrap();
        assert_eq!((b.lower, b.upper), (0.25, 0.25));
        assert_eq!(b.method_upper, UpperMethod::Exact1d);
    }

    #[test]
    fn volume_of_small_balls() {
        let two = Exponent::int(2);
        assert!((log_ball_volume(&[2], two, two) - std::f64::consts::PI.ln()).abs() < 1e-12);
        assert!((log_ball_volume(&[2], Exponent::int(1), Exponent::int(1)) - 2f64.ln()).abs() < 1e-12);
        assert!((log_ball_volume(&[3], Exponent::Infinite, Exponent::Infinite) - 8f64.ln()).abs() < 1e-12);
        // ℓ_2(ℓ_1^1, ℓ_1^1) is the disc
        assert!((log_ball_volume(&[1, 1], Exponent::int(1), two) - std::f64::consts::PI.ln()).abs() < 1e-12);
        let s = identity(2, two);
        assert!((entropy_lower(&s, 1).unwrap().0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_properties() {
        let s = identity(2, Exponent::int(2));
        let props = entropy_properties(&s, &[1, 2, 3, 5, 8]).unwrap();
        assert!(props.ok(), "{:?}", props.violations);
        let scaled = entropy_properties(&s.scaled(2.0), &[1, 2, 3, 5, 8]).unwrap();
        for (a, b) in props.bounds.iter().zip(&scaled.bounds) {
            assert!((b.upper - a.upper / 2.0).abs() <= 1e-12 * a.upper);
        }
    }

    #[test]
    fn cost_is_sound() {
        for m in 1..2000u64 {
            assert!(cost(m) as f64 >= (m as f64).log2() * BITS_RESOLUTION as f64 - 1e-9);
        }
        assert_eq!(cost(8), 3 * BITS_RESOLUTION);
    }
}
