//! Exact rational exponents and the extended exponents `(0, ∞]` used for
//! integrability parameters.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Exact rational number used for every rate, exponent and index.
pub type Rational = Ratio<i128>;

/// Largest numerator/denominator magnitude accepted from user input.
pub const RATIONAL_LIMIT: i128 = 1 << 40;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// `max(r, 0)`.
pub fn positive_part(r: Rational) -> Rational {
    if r.is_negative() {
        Rational::zero()
    } else {
        r
    }
}

/// Renders `3`, `-1/2`, ...
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn in_range(r: &Rational) -> bool {
    r.numer().abs() <= RATIONAL_LIMIT && *r.denom() <= RATIONAL_LIMIT
}

/// Parses `-3`, `7/4`, `0.125` or `-2.5e-1`-free decimals into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let bad = || ParseError::new(0, format!("invalid rational `{t}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let value = if let Some((n, d)) = t.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(bad)?;
        let d = parse_decimal(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(ParseError::new(0, "zero denominator"));
        }
        n / d
    } else {
        parse_decimal(t).ok_or_else(bad)?
    };
    if !in_range(&value) {
        return Err(ParseError::new(0, format!("rational `{t}` outside exact range")));
    }
    Ok(value)
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() || fp.contains('.') || ip.len() + fp.len() > 30 {
        return None;
    }
    let digits = format!("{ip}{fp}");
    let n: i128 = digits.parse().ok()?;
    let d = 10i128.checked_pow(fp.len() as u32)?;
    let r = Rational::new(n, d);
    Some(if neg { -r } else { r })
}

/// Integrability exponent in `(0, ∞]`, stored exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(Rational),
    Infinite,
}

impl Exponent {
    pub fn finite(r: Rational) -> Self {
        Exponent::Finite(r)
    }

    pub fn int(n: i128) -> Self {
        Exponent::Finite(int(n))
    }

    /// Builds the exponent whose reciprocal is `r` (`r = 0` gives `∞`).
    pub fn from_recip(r: Rational) -> Self {
        if r.is_zero() {
            Exponent::Infinite
        } else {
            Exponent::Finite(r.recip())
        }
    }

    pub fn recip(&self) -> Rational {
        match self {
            Exponent::Finite(r) => r.recip(),
            Exponent::Infinite => Rational::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Exponent::Finite(r) => r.is_positive(),
            Exponent::Infinite => true,
        }
    }

    /// Banach range `[1, ∞]`.
    pub fn is_banach(&self) -> bool {
        match self {
            Exponent::Finite(r) => *r >= Rational::one(),
            Exponent::Infinite => true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Finite(r) => to_f64(r),
            Exponent::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        // every admissible exponent is positive, so reciprocals order in reverse
        other.recip().cmp(&self.recip())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => f.write_str(&fmt_rational(r)),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "Inf" | "INF" => Ok(Exponent::Infinite),
            other => {
                let r = parse_rational(other)?;
                if !r.is_positive() {
                    return Err(ParseError::new(0, format!("exponent must be positive, got `{other}`")));
                }
                Ok(Exponent::Finite(r))
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        let text = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("bad exponent {other}"))),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing rationals as `"a/b"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("bad rational {other}"))),
        };
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub mod serde_opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&fmt_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|t| parse_rational(&t).map_err(serde::de::Error::custom)).transpose()
    }
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> i128 {
    let (q, m) = r.numer().div_mod_floor(r.denom());
    if m.is_zero() {
        q
    } else {
        q + 1
    }
}
