use std::f64::consts::LN_2;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rational::{to_f64, Rational};
use crate::seqdsl::{NormalForm, SeqExpr};

/// Two-sided ratio bounds `d0·γ_j ≤ γ_{j+1} ≤ d1·γ_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityCertificate {
    pub d0: f64,
    pub d1: f64,
    pub window: u64,
    /// The bounds are proven for every `j`, not only inside the window.
    pub exact: bool,
    /// `log₂ d0`, `log₂ d1`.
    pub log2_d0: f64,
    pub log2_d1: f64,
    /// Exact `(log₂ d0, log₂ d1)` when every contribution is rational.
    #[serde(skip)]
    pub exact_log2: Option<(Rational, Rational)>,
    /// Observed extremes of `log₂(γ_{j+1}/γ_j)` for `j < window`.
    pub window_log2_min: f64,
    pub window_log2_max: f64,
}

impl AdmissibilityCertificate {
    pub fn strongly_increasing(&self) -> bool {
        self.log2_d0 > 0.0
    }
}

/// Closed-form bounds on the one-step log-ratio of a table-free normal form,
/// as `(lo, hi, exact rational pair if available)`.
///
/// Per factor: `2^{aj}` steps by `a`; `(1+j)^b` by `b·log₂((2+j)/(1+j))`,
/// which lies between `0` (limit) and `b` (at `j = 0`); the iterated log
/// similarly between `0` and `c`; `exp(a·log^κ)` between `0` and `a/ln 2`;
/// the unit oscillation steps by `0` or `1`.
pub(crate) fn step_bounds(nf: &NormalForm) -> (f64, f64, Option<(Rational, Rational)>) {
    let mut lo = nf.rate;
    let mut hi = nf.rate;
    for r in [nf.log_exponent, nf.iterlog_exponent, nf.oscillation] {
        if r.is_negative() {
            lo += r;
        } else {
            hi += r;
        }
    }
    let mut flo = to_f64(&lo);
    let mut fhi = to_f64(&hi);
    for a in nf.explog.values() {
        let v = to_f64(a) / LN_2;
        if v < 0.0 {
            flo += v;
        } else {
            fhi += v;
        }
    }
    let exact = if nf.explog.is_empty() { Some((lo, hi)) } else { None };
    (flo, fhi, exact)
}

/// Certifies admissibility of `e`, scanning `j < J` and, for the tail,
/// using closed-form step bounds valid for every `j`.
pub fn certify_admissible(e: &SeqExpr, window: u64) -> AdmissibilityCertificate {
    let window = window.max(8);
    let prefix = e.prefix_len() as u64;
    let (mut wmin, mut wmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let scan = window.max(prefix + 1);
    let mut prefix_min = f64::INFINITY;
    let mut prefix_max = f64::NEG_INFINITY;
    for j in 0..scan {
        let step = e.log2_ratio(j + 1, j);
        if j < window {
            wmin = wmin.min(step);
            wmax = wmax.max(step);
        }
        if j < prefix {
            prefix_min = prefix_min.min(step);
            prefix_max = prefix_max.max(step);
        }
    }
    let tail = NormalForm::of(&e.tail());
    let (lo, hi, exact_pair) = step_bounds(&tail);
    let (lo, hi, exact_log2) =
        if prefix == 0 { (lo, hi, exact_pair) } else { (lo.min(prefix_min), hi.max(prefix_max), None) };
    AdmissibilityCertificate {
        d0: lo.exp2(),
        d1: hi.exp2(),
        window,
        exact: true,
        log2_d0: lo,
        log2_d1: hi,
        exact_log2,
        window_log2_min: wmin,
        window_log2_max: wmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn geometric_ratio() {
        let c = certify_admissible(&SeqExpr::geometric(int(1)), 16);
        assert_eq!((c.d0, c.d1), (2.0, 2.0));
        assert!(c.exact && c.strongly_increasing());
    }

    #[test]
    fn log_power_ratio() {
        let c = certify_admissible(&SeqExpr::log_power(int(1)), 16);
        assert_eq!((c.d0, c.d1), (1.0, 2.0));
        assert!(!c.strongly_increasing());
    }

    #[test]
    fn pw2_ratio() {
        let c = certify_admissible(&SeqExpr::pw2(int(1), int(2)), 64);
        assert_eq!((c.d0, c.d1), (2.0, 4.0));
        assert_eq!((c.window_log2_min, c.window_log2_max), (1.0, 2.0));
        assert!(c.strongly_increasing());
    }

    #[test]
    fn table_prefix_enters_bounds() {
        let e = SeqExpr::table(vec![1.0, 8.0], SeqExpr::geometric(int(1)));
        let c = certify_admissible(&e, 8);
        // 1 -> 8 -> 4 -> 8 ...
        assert_eq!(c.log2_d1, 3.0);
        assert_eq!(c.log2_d0, -1.0);
    }

    #[test]
    fn window_inside_proven_bounds() {
        let e = SeqExpr::product(vec![
            SeqExpr::geometric(int(-1)),
            SeqExpr::log_power(int(3)),
            SeqExpr::exp_log_pow(int(-2), crate::rational::rat(1, 2)),
            SeqExpr::power(SeqExpr::pw2(int(0), int(1)), int(-2)),
        ]);
        let c = certify_admissible(&e, 500);
        assert!(c.log2_d0 <= c.window_log2_min + 1e-12);
        assert!(c.window_log2_max <= c.log2_d1 + 1e-12);
    }
}
