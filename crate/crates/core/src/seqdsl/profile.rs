//! Asymptotic normal form and profile of a sequence expression.
//!
//! Every table-free expression is, exactly and for every `j`, a product
//!
//! ```text
//! C · 2^{a j} · (1+j)^b · (1+log(1+j))^c · Π_κ exp(e_κ log(1+j)^κ) · P_j^ρ
//! ```
//!
//! where `P = pw2(s0=0, s1=1)`. This works because `pw2(s0, s1)` equals
//! `2^{s0 j} · P^{s1−s0}` term by term.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rational, int, rat, serde_opt_rational, serde_rational, to_f64, Rational};

use super::ast::{fmt_exponent, SeqExpr};

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub coeff_log2: f64,
    pub rate: Rational,
    pub log_exponent: Rational,
    pub iterlog_exponent: Rational,
    /// `κ ↦ coefficient` of `exp(coeff·log(1+j)^κ)`; zero entries removed.
    pub explog: BTreeMap<Rational, Rational>,
    /// Power of the unit oscillation `pw2(s0=0, s1=1)`.
    pub oscillation: Rational,
    /// Table factors with their accumulated powers.
    pub opaque: Vec<(SeqExpr, Rational)>,
}

impl Default for NormalForm {
    fn default() -> Self {
        NormalForm {
            coeff_log2: 0.0,
            rate: Rational::zero(),
            log_exponent: Rational::zero(),
            iterlog_exponent: Rational::zero(),
            explog: BTreeMap::new(),
            oscillation: Rational::zero(),
            opaque: Vec::new(),
        }
    }
}

impl NormalForm {
    pub fn of(e: &SeqExpr) -> Self {
        let mut nf = NormalForm::default();
        nf.absorb(e, Rational::from_integer(1));
        nf.explog.retain(|_, a| !a.is_zero());
        nf.opaque.retain(|(_, r)| !r.is_zero());
        nf
    }

    fn absorb(&mut self, e: &SeqExpr, power: Rational) {
        match e {
            SeqExpr::Const { value } => self.coeff_log2 += to_f64(&power) * value.log2(),
            SeqExpr::Geometric { rate } => self.rate += power * *rate,
            SeqExpr::LogPower { exponent } => self.log_exponent += power * *exponent,
            SeqExpr::IterLog { exponent } => self.iterlog_exponent += power * *exponent,
            SeqExpr::ExpLogPow { coeff, power: kappa } => {
                *self.explog.entry(*kappa).or_insert_with(Rational::zero) += power * *coeff;
            }
            SeqExpr::PiecewiseGeometric { s0, s1 } => {
                self.rate += power * *s0;
                self.oscillation += power * (*s1 - *s0);
            }
            SeqExpr::Table { .. } => {
                if let Some(entry) = self.opaque.iter_mut().find(|(x, _)| x == e) {
                    entry.1 += power;
                } else {
                    self.opaque.push((e.clone(), power));
                }
            }
            SeqExpr::Product { factors } => {
                for f in factors {
                    self.absorb(f, power);
                }
            }
            SeqExpr::Power { base, exponent } => self.absorb(base, power * *exponent),
        }
    }

    pub fn is_opaque(&self) -> bool {
        !self.opaque.is_empty()
    }

    pub fn has_oscillation(&self) -> bool {
        !self.oscillation.is_zero()
    }

    /// Number of nonzero slowly varying generators beyond `(1+j)^b`.
    pub fn sv_count(&self) -> usize {
        self.explog.len() + usize::from(!self.iterlog_exponent.is_zero())
    }

    /// Largest `κ` with a nonzero `exp(a·log^κ)` factor, and its coefficient.
    pub fn dominant_explog(&self) -> Option<(Rational, Rational)> {
        self.explog.iter().next_back().map(|(k, a)| (*k, *a))
    }

    /// Quotient `self / other` in normal form.
    pub fn divide(&self, other: &NormalForm) -> NormalForm {
        let mut q = self.clone();
        q.coeff_log2 -= other.coeff_log2;
        q.rate -= other.rate;
        q.log_exponent -= other.log_exponent;
        q.iterlog_exponent -= other.iterlog_exponent;
        q.oscillation -= other.oscillation;
        for (k, a) in &other.explog {
            *q.explog.entry(*k).or_insert_with(Rational::zero) -= *a;
        }
        q.explog.retain(|_, a| !a.is_zero());
        for (e, r) in &other.opaque {
            if let Some(entry) = q.opaque.iter_mut().find(|(x, _)| x == e) {
                entry.1 -= *r;
            } else {
                q.opaque.push((e.clone(), -*r));
            }
        }
        q.opaque.retain(|(_, r)| !r.is_zero());
        q
    }

    /// Rebuilds a simplified expression with the same values.
    pub fn to_expr(&self) -> SeqExpr {
        let mut factors = Vec::new();
        if self.coeff_log2 != 0.0 {
            factors.push(SeqExpr::constant(self.coeff_log2.exp2()));
        }
        if self.has_oscillation() {
            if self.oscillation.is_positive() {
                factors.push(SeqExpr::pw2(self.rate, self.rate + self.oscillation));
            } else {
                if !self.rate.is_zero() {
                    factors.push(SeqExpr::geometric(self.rate));
                }
                factors.push(SeqExpr::power(SeqExpr::pw2(Rational::zero(), int(1)), self.oscillation));
            }
        } else if !self.rate.is_zero() {
            factors.push(SeqExpr::geometric(self.rate));
        }
        if !self.log_exponent.is_zero() {
            factors.push(SeqExpr::log_power(self.log_exponent));
        }
        if !self.iterlog_exponent.is_zero() {
            factors.push(SeqExpr::iter_log(self.iterlog_exponent));
        }
        for (k, a) in &self.explog {
            factors.push(SeqExpr::exp_log_pow(*a, *k));
        }
        for (e, r) in &self.opaque {
            if *r == int(1) {
                factors.push(e.clone());
            } else {
                factors.push(SeqExpr::power(e.clone(), *r));
            }
        }
        match factors.len() {
            0 => SeqExpr::one(),
            1 => factors.pop().unwrap(),
            _ => SeqExpr::product(factors),
        }
    }

    /// Rendering of the slowly varying part other than `(1+j)^b`.
    pub fn sv_tag(&self) -> Option<String> {
        let mut parts = Vec::new();
        if !self.iterlog_exponent.is_zero() {
            parts.push(format!("(1+log(1+j))^{}", fmt_exponent(&self.iterlog_exponent)));
        }
        for (k, a) in &self.explog {
            parts.push(format!("exp({}*log(1+j)^{})", fmt_rational(a), fmt_exponent(k)));
        }
        if parts.is_empty() {
            None
        } else {
            Some(parts.join(" * "))
        }
    }
}

/// Exact Boyd index, a two-sided bracket, or unavailable without numerics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoydIndex {
    Exact {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    Interval {
        lo: f64,
        hi: f64,
    },
    Deferred,
}

impl BoydIndex {
    pub fn exact(&self) -> Option<Rational> {
        match self {
            BoydIndex::Exact { value } => Some(*value),
            _ => None,
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self {
            BoydIndex::Exact { value } => Some((to_f64(value), to_f64(value))),
            BoydIndex::Interval { lo, hi } => Some((*lo, *hi)),
            BoydIndex::Deferred => None,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        match self.bounds() {
            Some((lo, hi)) => lo - 1e-12 <= x && x <= hi + 1e-12,
            None => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceProfile {
    #[serde(with = "serde_opt_rational")]
    pub rate: Option<Rational>,
    #[serde(with = "serde_opt_rational")]
    pub log_exponent: Option<Rational>,
    pub sv_factor: Option<String>,
    pub boyd_upper: BoydIndex,
    pub boyd_lower: BoydIndex,
    pub canonical: bool,
}

/// Exact Boyd indices `(lower, upper)` of a table-free normal form.
///
/// Slowly varying factors do not move the indices; the unit oscillation has
/// lower index `0` and upper index `1`.
pub fn exact_boyd(nf: &NormalForm) -> Option<(Rational, Rational)> {
    if nf.is_opaque() {
        return None;
    }
    let rho = nf.oscillation;
    let (lo, hi) = if rho.is_negative() { (rho, Rational::zero()) } else { (Rational::zero(), rho) };
    Some((nf.rate + lo, nf.rate + hi))
}

/// `(liminf, limsup)` of `log₂ γ_j / j` for a table-free normal form.
pub fn growth_orders(nf: &NormalForm) -> (Rational, Rational) {
    let rho = nf.oscillation;
    let a = rho * rat(1, 3);
    let b = rho * rat(2, 3);
    let (lo, hi) = if rho.is_negative() { (b, a) } else { (a, b) };
    (nf.rate + lo, nf.rate + hi)
}

pub fn canonicalize(e: &SeqExpr) -> SequenceProfile {
    let nf = NormalForm::of(e);
    if nf.is_opaque() {
        return SequenceProfile {
            rate: None,
            log_exponent: None,
            sv_factor: None,
            boyd_upper: BoydIndex::Deferred,
            boyd_lower: BoydIndex::Deferred,
            canonical: false,
        };
    }
    let (lower, upper) = exact_boyd(&nf).expect("table-free");
    let canonical = !nf.has_oscillation() && nf.sv_count() <= 1;
    SequenceProfile {
        rate: if nf.has_oscillation() { None } else { Some(nf.rate) },
        log_exponent: if nf.has_oscillation() { None } else { Some(nf.log_exponent) },
        sv_factor: nf.sv_tag(),
        boyd_upper: BoydIndex::Exact { value: upper },
        boyd_lower: BoydIndex::Exact { value: lower },
        canonical,
    }
}
