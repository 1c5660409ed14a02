//! Evaluation of sequence expressions.
//!
//! Every logarithm is base 2. The primary path works in log space so that
//! sequences such as `2^(1000*j)` stay representable; [`SeqExpr::eval`]
//! reports values outside the `f64` range through [`Scale`] instead of
//! returning non-finite numbers.

use std::f64::consts::LN_2;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{int, to_f64, Rational};

use super::ast::SeqExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Finite,
    /// The value exceeds `f64::MAX`; `log2` is still exact.
    Overflow,
    /// The value is below the smallest positive `f64`.
    Underflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Value {
    /// The value itself, or `0`/`f64::MAX` saturated according to `scale`.
    pub value: f64,
    pub log2: f64,
    pub scale: Scale,
}

/// `log₂ pw2(s0=0, s1=1)_j` as an exact rational.
///
/// Blocks are `[2^l, 2^{l+1})`. The anchor at `2^l` is `2^l·2/3` for even
/// `l` and `2^l/3` for odd `l`; within a block the increment per step is `0`
/// (even) or `1` (odd). The anchors chain continuously across blocks, and
/// `j = 0` continues the first block backwards.
pub fn oscillation_log2(j: u64) -> Rational {
    if j == 0 {
        return int(2) / int(3);
    }
    let l = 63 - j.leading_zeros();
    let jl = 1i128 << l;
    let anchor = if l % 2 == 0 { int(2 * jl) / int(3) } else { int(jl) / int(3) };
    if l % 2 == 0 {
        anchor
    } else {
        anchor + int(j as i128 - jl)
    }
}

/// `log₂ pw2(s0, s1)_j = s0·j + (s1−s0)·oscillation_log2(j)`.
pub fn pw2_log2(s0: &Rational, s1: &Rational, j: u64) -> Rational {
    *s0 * int(j as i128) + (*s1 - *s0) * oscillation_log2(j)
}

impl SeqExpr {
    /// `log₂ γ_j`.
    pub fn eval_log2(&self, j: u64) -> f64 {
        let jf = j as f64;
        match self {
            SeqExpr::Const { value } => value.log2(),
            SeqExpr::Geometric { rate } => to_f64(rate) * jf,
            SeqExpr::LogPower { exponent } => to_f64(exponent) * (1.0 + jf).log2(),
            SeqExpr::IterLog { exponent } => to_f64(exponent) * (1.0 + (1.0 + jf).log2()).log2(),
            SeqExpr::ExpLogPow { coeff, power } => to_f64(coeff) * (1.0 + jf).log2().powf(to_f64(power)) / LN_2,
            SeqExpr::PiecewiseGeometric { s0, s1 } => to_f64(&pw2_log2(s0, s1, j)),
            SeqExpr::Table { prefix, then } => match prefix.get(j as usize) {
                Some(v) => v.log2(),
                None => then.eval_log2(j),
            },
            SeqExpr::Product { factors } => factors.iter().map(|f| f.eval_log2(j)).sum(),
            SeqExpr::Power { base, exponent } => to_f64(exponent) * base.eval_log2(j),
        }
    }

    /// Exact `log₂ γ_j` when every node reached at `j` is a power of two with
    /// rational exponent.
    pub fn exact_log2(&self, j: u64) -> Option<Rational> {
        match self {
            SeqExpr::Const { value } => exact_log2_of_f64(*value),
            SeqExpr::Geometric { rate } => Some(*rate * int(j as i128)),
            SeqExpr::LogPower { exponent } => {
                if exponent.is_zero() {
                    Some(Rational::zero())
                } else {
                    exact_log2_of_u64(j.checked_add(1)?).map(|l| l * *exponent)
                }
            }
            SeqExpr::IterLog { exponent } => {
                if exponent.is_zero() {
                    return Some(Rational::zero());
                }
                let inner = exact_log2_of_u64(j.checked_add(1)?)?;
                if !inner.is_integer() {
                    return None;
                }
                let arg = u64::try_from(*inner.numer() + 1).ok()?;
                exact_log2_of_u64(arg).map(|l| l * *exponent)
            }
            SeqExpr::ExpLogPow { coeff, .. } => {
                if coeff.is_zero() || j == 0 {
                    Some(Rational::zero())
                } else {
                    None
                }
            }
            SeqExpr::PiecewiseGeometric { s0, s1 } => Some(pw2_log2(s0, s1, j)),
            SeqExpr::Table { prefix, then } => match prefix.get(j as usize) {
                Some(v) => exact_log2_of_f64(*v),
                None => then.exact_log2(j),
            },
            SeqExpr::Product { factors } => {
                let mut acc = Rational::zero();
                for f in factors {
                    acc += f.exact_log2(j)?;
                }
                Some(acc)
            }
            SeqExpr::Power { base, exponent } => base.exact_log2(j).map(|l| l * *exponent),
        }
    }

    /// `log₂ γ_j`, from the exact path when available.
    pub fn log2_value(&self, j: u64) -> f64 {
        match self.exact_log2(j) {
            Some(r) => to_f64(&r),
            None => self.eval_log2(j),
        }
    }

    /// `log₂(γ_{j2}/γ_{j1})`, exact when both values are.
    pub fn log2_ratio(&self, j2: u64, j1: u64) -> f64 {
        match (self.exact_log2(j2), self.exact_log2(j1)) {
            (Some(a), Some(b)) => to_f64(&(a - b)),
            _ => self.eval_log2(j2) - self.eval_log2(j1),
        }
    }

    /// `γ_j` with an explicit range flag.
    pub fn eval(&self, j: u64) -> Value {
        let log2 = self.log2_value(j);
        if log2 > f64::MAX_EXP as f64 {
            return Value { value: f64::MAX, log2, scale: Scale::Overflow };
        }
        if log2 < (f64::MIN_EXP - 53) as f64 {
            return Value { value: 0.0, log2, scale: Scale::Underflow };
        }
        let direct = self.eval_direct(j);
        let value = if direct.is_finite() && direct > 0.0 { direct } else { log2.exp2() };
        if !(value.is_finite() && value > 0.0) {
            let scale = if log2 > 0.0 { Scale::Overflow } else { Scale::Underflow };
            let value = if log2 > 0.0 { f64::MAX } else { 0.0 };
            return Value { value, log2, scale };
        }
        Value { value, log2, scale: Scale::Finite }
    }

    /// Plain floating-point product; may overflow, callers check.
    fn eval_direct(&self, j: u64) -> f64 {
        let jf = j as f64;
        match self {
            SeqExpr::Const { value } => *value,
            SeqExpr::Geometric { rate } => (to_f64(rate) * jf).exp2(),
            SeqExpr::LogPower { exponent } => pow_rational(1.0 + jf, exponent),
            SeqExpr::IterLog { exponent } => pow_rational(1.0 + (1.0 + jf).log2(), exponent),
            SeqExpr::ExpLogPow { coeff, power } => (to_f64(coeff) * (1.0 + jf).log2().powf(to_f64(power))).exp(),
            SeqExpr::PiecewiseGeometric { s0, s1 } => to_f64(&pw2_log2(s0, s1, j)).exp2(),
            SeqExpr::Table { prefix, then } => match prefix.get(j as usize) {
                Some(v) => *v,
                None => then.eval_direct(j),
            },
            SeqExpr::Product { factors } => factors.iter().map(|f| f.eval_direct(j)).product(),
            SeqExpr::Power { base, exponent } => pow_rational(base.eval_direct(j), exponent),
        }
    }

    /// `log₂ γ(2^x)` for real `x ≥ 0`, where `γ(2^j) = γ_j`.
    ///
    /// Smooth nodes use their closed form in `x`. Oscillating and tabulated
    /// nodes are interpolated linearly in `t = 2^x` between `2^k` and
    /// `2^{k+1}`.
    pub fn log2_at(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match self {
            SeqExpr::Const { value } => value.log2(),
            SeqExpr::Geometric { rate } => to_f64(rate) * x,
            SeqExpr::LogPower { exponent } => to_f64(exponent) * (1.0 + x).log2(),
            SeqExpr::IterLog { exponent } => to_f64(exponent) * (1.0 + (1.0 + x).log2()).log2(),
            SeqExpr::ExpLogPow { coeff, power } => to_f64(coeff) * (1.0 + x).log2().powf(to_f64(power)) / LN_2,
            SeqExpr::PiecewiseGeometric { .. } | SeqExpr::Table { .. } => self.interpolated_log2(x),
            SeqExpr::Product { factors } => factors.iter().map(|f| f.log2_at(x)).sum(),
            SeqExpr::Power { base, exponent } => to_f64(exponent) * base.log2_at(x),
        }
    }

    fn interpolated_log2(&self, x: f64) -> f64 {
        let k = x.floor();
        let theta = (x - k).exp2() - 1.0;
        if theta <= 0.0 {
            return self.eval_log2(k as u64);
        }
        let lo = self.eval_log2(k as u64);
        let hi = self.eval_log2(k as u64 + 1);
        // log2(σ_k + θ(σ_{k+1} − σ_k)) without leaving log space
        let r = (hi - lo).exp2();
        lo + (1.0 + theta * (r - 1.0)).log2()
    }
}

fn pow_rational(base: f64, e: &Rational) -> f64 {
    if e.is_one() {
        base
    } else if e.is_integer() {
        match i32::try_from(*e.numer()) {
            Ok(n) => base.powi(n),
            Err(_) => base.powf(to_f64(e)),
        }
    } else {
        base.powf(to_f64(e))
    }
}

fn exact_log2_of_u64(n: u64) -> Option<Rational> {
    if n.is_power_of_two() {
        Some(int(n.trailing_zeros() as i128))
    } else {
        None
    }
}

fn exact_log2_of_f64(v: f64) -> Option<Rational> {
    let l = v.log2();
    if l.is_finite() && l.fract() == 0.0 && l.exp2() == v {
        Some(int(l as i128))
    } else {
        None
    }
}
