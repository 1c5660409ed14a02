//! Randomised lower bounds for the operator norm of a section.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::section::FiniteSection;

const STEPS: [f64; 8] = [1.0, 0.5, 0.25, 0.1, 0.03, 0.01, 0.003, 0.001];

fn ratio(s: &FiniteSection, x: &[f64]) -> f64 {
    let den = s.source_norm(x);
    if den == 0.0 {
        0.0
    } else {
        s.target_norm(x) / den
    }
}

/// Coordinate ascent on `‖x‖_Y / ‖x‖_X` from structured and random starts.
///
/// Every returned value is attained by an explicit vector, so the result is
/// a lower bound on the norm. `iters` is the number of random restarts and
/// also bounds the number of sweeps per start.
pub fn embedding_norm_search(s: &FiniteSection, iters: usize, seed: u64) -> f64 {
    let iters = iters.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = s.dim();
    let mut best = 0.0f64;

    // block level: magnitudes t_j on a fixed shape per block
    let shapes = block_shapes(s);
    let mut t = vec![1.0; s.m.len()];
    for j in 0..s.m.len() {
        let mut single = vec![0.0; s.m.len()];
        single[j] = 1.0;
        best = best.max(ratio(s, &expand(s, &shapes, &single)));
    }
    best = best.max(block_ascent(s, &shapes, &mut t, iters));
    let polished = polish(s, expand(s, &shapes, &t), iters);
    best = best.max(polished);

    for _ in 0..iters {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        best = best.max(polish(s, x, iters.min(8)));
    }
    best
}

/// For each block the better of a unit vector and the constant vector.
fn block_shapes(s: &FiniteSection) -> Vec<bool> {
    s.m.iter()
        .enumerate()
        .map(|(j, &m)| {
            let unit: Vec<f64> = (0..m).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
            let flat = vec![1.0; m];
            let r = |v: &[f64]| super::section::lp_norm(v, s.p2) / (s.beta[j] * super::section::lp_norm(v, s.p1));
            r(&flat) > r(&unit)
        })
        .collect()
}

fn expand(s: &FiniteSection, flat: &[bool], t: &[f64]) -> Vec<f64> {
    s.m.iter()
        .zip(flat)
        .zip(t)
        .flat_map(|((&m, &flat), &tj)| (0..m).map(move |i| if flat || i == 0 { tj } else { 0.0 }))
        .collect()
}

fn block_ascent(s: &FiniteSection, shapes: &[bool], t: &mut [f64], iters: usize) -> f64 {
    let mut cur = ratio(s, &expand(s, shapes, t));
    for &h in &STEPS {
        for _ in 0..iters.max(4) * 4 {
            let mut improved = false;
            for j in 0..t.len() {
                for factor in [1.0 + h, 1.0 / (1.0 + h)] {
                    let old = t[j];
                    t[j] = old * factor;
                    let r = ratio(s, &expand(s, shapes, t));
                    if r > cur {
                        cur = r;
                        improved = true;
                    } else {
                        t[j] = old;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    cur
}

fn polish(s: &FiniteSection, mut x: Vec<f64>, iters: usize) -> f64 {
    let mut cur = ratio(s, &x);
    for &h in &STEPS {
        for _ in 0..iters.max(2) {
            let mut improved = false;
            let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
            for i in 0..x.len() {
                let old = x[i];
                for cand in [old * (1.0 + h), old * (1.0 - h), old + h * scale, old - h * scale, 0.0] {
                    x[i] = cand;
                    let r = ratio(s, &x);
                    if r > cur {
                        cur = r;
                        improved = true;
                        break;
                    }
                    x[i] = old;
                }
            }
            if !improved {
                break;
            }
        }
    }
    cur
}
