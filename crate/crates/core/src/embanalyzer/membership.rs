//! Exact `ℓ_r`, `c_0` and `ℓ_∞` membership of DSL sequences.
//!
//! Membership only depends on the tail, whose normal form is
//! `C·2^{aj}(1+j)^b(1+log(1+j))^c·Π exp(e_κ log(1+j)^κ)·P_j^ρ`.
//!
//! * Without oscillation the geometric rate decides unless `a = 0`; then
//!   `Σ (1+j)^{br}…` is compared with the harmonic series, and on the
//!   boundary `br = −1` the dominant `exp(e·log^κ)` factor, or failing that
//!   the iterated log, decides (Bertrand series).
//! * With oscillation `log₂γ_j / j` ranges over `[lo, hi]`. If `hi = 0` the
//!   sequence is geometrically small away from the peaks `j = 4^m` (or
//!   `2·4^m`), so the series behaves like its peak subsequence, in which
//!   `(1+j)^b ≈ 2^{2mb}` and `(1+log(1+j))^c ≈ (2m)^c`.

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_rational, Exponent, Rational};
use crate::seqdsl::{canonicalize, growth_orders, NormalForm, SeqExpr};

use super::verdict::{Evidence, Status, Target, Verdict};

pub const MEMBERSHIP_CITATION: &str = "sequence-membership";

/// Decides whether `e` lies in `ℓ_r` (or `c_0` when `r = ∞` and `c0`).
pub fn ellr_membership(e: &SeqExpr, r: Exponent, c0: bool) -> Verdict {
    let target = Target::new(r, c0);
    let tail = e.tail();
    let nf = NormalForm::of(&tail);
    let mut comparisons = Vec::new();
    let status = decide(&nf, target, &mut comparisons);
    let mut notes = Vec::new();
    if e.contains_table() {
        notes.push("finite table prefix ignored: membership depends only on the tail".into());
    }
    Verdict {
        status,
        tested_sequence: e.clone(),
        target,
        evidence: Evidence {
            method: "exact-profile".into(),
            profile: Some(canonicalize(&tail)),
            comparisons,
            notes,
            unresolved: None,
        },
        citation: MEMBERSHIP_CITATION.into(),
    }
}

fn decide(nf: &NormalForm, target: Target, log: &mut Vec<String>) -> Status {
    let (lo, hi) = growth_orders(nf);
    if nf.has_oscillation() {
        log.push(format!("log2(g_j)/j oscillates between {} and {}", fmt_rational(&lo), fmt_rational(&hi)));
    } else {
        log.push(format!("geometric rate a = {}", fmt_rational(&nf.rate)));
    }
    if hi.is_negative() {
        log.push("exponential decay: member of every l_r and c_0".into());
        return Status::Holds;
    }
    if hi.is_positive() {
        log.push("exponential growth along a subsequence: not bounded".into());
        return Status::Fails;
    }
    if nf.has_oscillation() {
        log.push("top growth order is 0: decided on the peak subsequence".into());
        return decide_peaks(nf, target, log);
    }
    decide_slowly_varying(nf, target, log)
}

/// `a = 0`, no oscillation.
fn decide_slowly_varying(nf: &NormalForm, target: Target, log: &mut Vec<String>) -> Status {
    let b = nf.log_exponent;
    match target {
        Target::Ell { r } => {
            let r = finite(r);
            let br = b * r;
            log.push(format!("b*r = {} against -1", fmt_rational(&br)));
            if br < -Rational::one() {
                return Status::Holds;
            }
            if br > -Rational::one() {
                return Status::Fails;
            }
            log.push("boundary b*r = -1: Bertrand series in log j".into());
            if let Some((kappa, a)) = nf.dominant_explog() {
                log.push(format!(
                    "dominant exp(a*log^k) factor: a = {}, k = {}",
                    fmt_rational(&a),
                    fmt_rational(&kappa)
                ));
                return if a.is_negative() { Status::Holds } else { Status::Fails };
            }
            let cr = nf.iterlog_exponent * r;
            log.push(format!("iterated-log exponent c*r = {} against -1", fmt_rational(&cr)));
            if cr < -Rational::one() {
                Status::Holds
            } else {
                Status::Fails
            }
        }
        Target::C0 | Target::EllInf => decide_bounded(nf, b, target, log),
    }
}

/// Null or bounded, given the slowly varying part with log exponent `b`.
fn decide_bounded(nf: &NormalForm, b: Rational, target: Target, log: &mut Vec<String>) -> Status {
    log.push(format!("log exponent b = {}", fmt_rational(&b)));
    if b.is_negative() {
        return Status::Holds;
    }
    if b.is_positive() {
        return Status::Fails;
    }
    if let Some((kappa, a)) = nf.dominant_explog() {
        log.push(format!("dominant exp(a*log^k) factor: a = {}, k = {}", fmt_rational(&a), fmt_rational(&kappa)));
        return if a.is_negative() { Status::Holds } else { Status::Fails };
    }
    let c = nf.iterlog_exponent;
    log.push(format!("iterated-log exponent c = {}", fmt_rational(&c)));
    let ok = match target {
        Target::C0 => c.is_negative(),
        _ => !c.is_positive(),
    };
    if ok {
        Status::Holds
    } else {
        Status::Fails
    }
}

/// Oscillating tail with top growth order exactly 0.
fn decide_peaks(nf: &NormalForm, target: Target, log: &mut Vec<String>) -> Status {
    let b = nf.log_exponent;
    log.push(format!("peak values behave like 2^(2m*{})", fmt_rational(&b)));
    if b.is_negative() {
        return Status::Holds;
    }
    if b.is_positive() {
        return Status::Fails;
    }
    match target {
        Target::Ell { r } => {
            let r = finite(r);
            if let Some((kappa, a)) = nf.dominant_explog() {
                log.push(format!(
                    "peak values carry exp(a*(2m)^k): a = {}, k = {}",
                    fmt_rational(&a),
                    fmt_rational(&kappa)
                ));
                return if a.is_negative() { Status::Holds } else { Status::Fails };
            }
            let cr = nf.iterlog_exponent * r;
            log.push(format!("peak values carry (2m)^(c*r), c*r = {}", fmt_rational(&cr)));
            if cr < -Rational::one() {
                Status::Holds
            } else {
                Status::Fails
            }
        }
        Target::C0 | Target::EllInf => decide_bounded(nf, Rational::zero(), target, log),
    }
}

fn finite(r: Exponent) -> Rational {
    match r {
        Exponent::Finite(r) => r,
        Exponent::Infinite => unreachable!("Target::Ell carries a finite exponent"),
    }
}
