//! Tong numbers, dual-star exponents and the dimension gap `δ`.

use num_traits::One;

use crate::error::AnalysisError;
use crate::rational::{positive_part, Exponent, Rational};

/// `t(r1, r2)`: `1/t = 1` if `r2 ≤ r1`, else `1 − 1/r1 + 1/r2`.
pub fn tong(r1: Exponent, r2: Exponent) -> Result<Exponent, AnalysisError> {
    if !r1.is_banach() || !r2.is_banach() {
        return Err(AnalysisError::QuasiBanach(format!("t({r1}, {r2})")));
    }
    Ok(Exponent::from_recip(tong_recip(r1, r2)))
}

/// `1/t(r1, r2) = 1 − (1/r1 − 1/r2)₊`.
pub fn tong_recip(r1: Exponent, r2: Exponent) -> Rational {
    Rational::one() - positive_part(r1.recip() - r2.recip())
}

/// `r*` with `1/r* = (1/r2 − 1/r1)₊`.
pub fn dual_star(r1: Exponent, r2: Exponent) -> Exponent {
    Exponent::from_recip(positive_part(r2.recip() - r1.recip()))
}

/// `δ = s1 − d/p1 − s2 + d/p2`.
pub fn delta(s1: Rational, p1: Exponent, s2: Rational, p2: Exponent, d: u32) -> Rational {
    let d = Rational::from_integer(d as i128);
    s1 - d * p1.recip() - s2 + d * p2.recip()
}

/// `(d/p*, d/t(p1,p2)]`: the classical values of `δ` for which the
/// embedding is compact but not nuclear. `None` when empty.
pub fn compact_not_nuclear_band(
    p1: Exponent,
    p2: Exponent,
    d: u32,
) -> Result<Option<(Rational, Rational)>, AnalysisError> {
    let t = tong(p1, p2)?;
    let d = Rational::from_integer(d as i128);
    let lo = d * dual_star(p1, p2).recip();
    let hi = d * t.recip();
    Ok(if lo < hi { Some((lo, hi)) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn e(n: i128) -> Exponent {
        Exponent::int(n)
    }

    #[test]
    fn tong_values() {
        assert_eq!(tong(Exponent::Infinite, e(1)).unwrap(), e(1));
        assert_eq!(tong(e(1), Exponent::Infinite).unwrap(), Exponent::Infinite);
        assert_eq!(tong(e(2), e(4)).unwrap(), Exponent::Finite(rat(4, 3)));
        assert!(tong(Exponent::Finite(rat(1, 2)), e(2)).is_err());
    }

    #[test]
    fn dual_star_values() {
        assert_eq!(dual_star(e(1), Exponent::Infinite), Exponent::Infinite);
        assert_eq!(dual_star(Exponent::Infinite, e(1)), e(1));
        assert_eq!(dual_star(e(4), e(2)), e(4));
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(int(2), e(3), int(0), e(3), 5), int(2));
        assert_eq!(delta(int(1), e(1), int(0), e(2), 2), int(0));
    }

    #[test]
    fn band() {
        assert_eq!(compact_not_nuclear_band(e(2), e(2), 1).unwrap(), Some((int(0), int(1))));
        assert_eq!(compact_not_nuclear_band(e(1), Exponent::Infinite, 3).unwrap(), None);
        assert_eq!(compact_not_nuclear_band(e(2), e(4), 2).unwrap(), Some((int(0), rat(3, 2))));
    }
}
