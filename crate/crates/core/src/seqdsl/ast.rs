use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SequenceError;
use crate::rational::{fmt_rational, serde_rational, Rational};

/// Maximum nesting depth of `Product`/`Power` trees.
pub const MAX_DEPTH: usize = 32;

/// A positive sequence `j ↦ γ_j`, `j ≥ 0`, built from multiplicative nodes.
///
/// All logarithms are base 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum SeqExpr {
    /// Positive constant.
    Const {
        value: f64,
    },
    /// `2^(rate·j)`.
    Geometric {
        #[serde(with = "serde_rational")]
        rate: Rational,
    },
    /// `(1+j)^exponent`.
    LogPower {
        #[serde(with = "serde_rational")]
        exponent: Rational,
    },
    /// `(1+log₂(1+j))^exponent`.
    IterLog {
        #[serde(with = "serde_rational")]
        exponent: Rational,
    },
    /// `exp(coeff·(log₂(1+j))^power)` with `0 < power < 1`.
    ExpLogPow {
        #[serde(with = "serde_rational")]
        coeff: Rational,
        #[serde(with = "serde_rational")]
        power: Rational,
    },
    /// Oscillating sequence on the dyadic blocks `[2^l, 2^{l+1})`: growth rate
    /// `s0` on even blocks and `s1` on odd blocks, anchored so that it equals
    /// `2^{j(2s1+s0)/3}` at `j = 4^l` and `2^{j(s1+2s0)/3}` at `j = 2·4^l`.
    PiecewiseGeometric {
        #[serde(with = "serde_rational")]
        s0: Rational,
        #[serde(with = "serde_rational")]
        s1: Rational,
    },
    /// Explicit values for `j < prefix.len()`, then `then` evaluated at `j`.
    Table {
        prefix: Vec<f64>,
        then: Box<SeqExpr>,
    },
    Product {
        factors: Vec<SeqExpr>,
    },
    Power {
        base: Box<SeqExpr>,
        #[serde(with = "serde_rational")]
        exponent: Rational,
    },
}

impl SeqExpr {
    pub fn constant(value: f64) -> Self {
        SeqExpr::Const { value }
    }

    pub fn one() -> Self {
        SeqExpr::Const { value: 1.0 }
    }

    pub fn geometric(rate: Rational) -> Self {
        SeqExpr::Geometric { rate }
    }

    pub fn log_power(exponent: Rational) -> Self {
        SeqExpr::LogPower { exponent }
    }

    pub fn iter_log(exponent: Rational) -> Self {
        SeqExpr::IterLog { exponent }
    }

    pub fn exp_log_pow(coeff: Rational, power: Rational) -> Self {
        SeqExpr::ExpLogPow { coeff, power }
    }

    pub fn pw2(s0: Rational, s1: Rational) -> Self {
        SeqExpr::PiecewiseGeometric { s0, s1 }
    }

    pub fn table(prefix: Vec<f64>, then: SeqExpr) -> Self {
        SeqExpr::Table { prefix, then: Box::new(then) }
    }

    pub fn product(factors: Vec<SeqExpr>) -> Self {
        SeqExpr::Product { factors }
    }

    pub fn power(base: SeqExpr, exponent: Rational) -> Self {
        SeqExpr::Power { base: Box::new(base), exponent }
    }

    pub fn inverse(self) -> Self {
        SeqExpr::power(self, -Rational::one())
    }

    /// `2^(rate·j)·(1+j)^log_exponent`, the usual log-perturbed smoothness.
    pub fn geometric_log(rate: Rational, log_exponent: Rational) -> Self {
        if log_exponent.is_zero() {
            SeqExpr::geometric(rate)
        } else {
            SeqExpr::product(vec![SeqExpr::geometric(rate), SeqExpr::log_power(log_exponent)])
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SeqExpr::Table { then, .. } => 1 + then.depth(),
            SeqExpr::Product { factors } => 1 + factors.iter().map(SeqExpr::depth).max().unwrap_or(0),
            SeqExpr::Power { base, .. } => 1 + base.depth(),
            _ => 1,
        }
    }

    /// Checks the structural invariants of every node.
    pub fn validate(&self) -> Result<(), SequenceError> {
        if self.depth() > MAX_DEPTH {
            return Err(SequenceError::Invalid(format!("nesting deeper than {MAX_DEPTH}")));
        }
        self.validate_nodes()
    }

    fn validate_nodes(&self) -> Result<(), SequenceError> {
        match self {
            SeqExpr::Const { value } => {
                if !(value.is_finite() && *value > 0.0) {
                    return Err(SequenceError::Invalid(format!("non-positive constant {value}")));
                }
            }
            SeqExpr::ExpLogPow { power, .. } => {
                if !(power.is_positive() && *power < Rational::one()) {
                    return Err(SequenceError::Invalid(format!(
                        "exp-log power must lie in (0,1), got {}",
                        fmt_rational(power)
                    )));
                }
            }
            SeqExpr::PiecewiseGeometric { s0, s1 } => {
                if s0 >= s1 {
                    return Err(SequenceError::Invalid("pw2 needs s0 < s1".into()));
                }
            }
            SeqExpr::Table { prefix, then } => {
                if prefix.is_empty() {
                    return Err(SequenceError::Invalid("empty table prefix".into()));
                }
                if let Some(v) = prefix.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(SequenceError::Invalid(format!("non-positive table entry {v}")));
                }
                then.validate_nodes()?;
            }
            SeqExpr::Product { factors } => {
                if factors.is_empty() {
                    return Err(SequenceError::Invalid("empty product".into()));
                }
                for f in factors {
                    f.validate_nodes()?;
                }
            }
            SeqExpr::Power { base, .. } => base.validate_nodes()?,
            _ => {}
        }
        Ok(())
    }

    /// The same sequence with every finite table prefix dropped; equal to
    /// `self` for all `j` beyond the longest prefix.
    pub fn tail(&self) -> SeqExpr {
        match self {
            SeqExpr::Table { then, .. } => then.tail(),
            SeqExpr::Product { factors } => SeqExpr::product(factors.iter().map(SeqExpr::tail).collect()),
            SeqExpr::Power { base, exponent } => SeqExpr::power(base.tail(), *exponent),
            other => other.clone(),
        }
    }

    /// Index from which `self` coincides with `self.tail()`.
    pub fn prefix_len(&self) -> usize {
        match self {
            SeqExpr::Table { prefix, then } => prefix.len().max(then.prefix_len()),
            SeqExpr::Product { factors } => factors.iter().map(SeqExpr::prefix_len).max().unwrap_or(0),
            SeqExpr::Power { base, .. } => base.prefix_len(),
            _ => 0,
        }
    }

    pub fn contains_table(&self) -> bool {
        self.prefix_len() > 0
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn needs_parens_as_factor(&self) -> bool {
        matches!(self, SeqExpr::Product { .. } | SeqExpr::Table { .. })
    }
}

/// Exponent position: integers bare, fractions parenthesised.
pub(crate) fn fmt_exponent(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({})", fmt_rational(r))
    }
}

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v}")
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqExpr::Const { value } => f.write_str(&fmt_real(*value)),
            SeqExpr::Geometric { rate } => {
                if rate.is_one() {
                    f.write_str("2^(j)")
                } else {
                    write!(f, "2^({}*j)", fmt_rational(rate))
                }
            }
            SeqExpr::LogPower { exponent } => write!(f, "(1+j)^{}", fmt_exponent(exponent)),
            SeqExpr::IterLog { exponent } => write!(f, "(1+log(1+j))^{}", fmt_exponent(exponent)),
            SeqExpr::ExpLogPow { coeff, power } => {
                write!(f, "exp({}*log(1+j)^{})", fmt_rational(coeff), fmt_exponent(power))
            }
            SeqExpr::PiecewiseGeometric { s0, s1 } => {
                write!(f, "pw2(s0={}, s1={})", fmt_rational(s0), fmt_rational(s1))
            }
            SeqExpr::Table { prefix, then } => {
                let items: Vec<String> = prefix.iter().map(|v| fmt_real(*v)).collect();
                write!(f, "table[{}] then {}", items.join(", "), then)
            }
            SeqExpr::Product { factors } => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    if factor.needs_parens_as_factor() {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            SeqExpr::Power { base, exponent } => write!(f, "({})^{}", base, fmt_exponent(exponent)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn renders_nodes() {
        let e = SeqExpr::product(vec![SeqExpr::geometric(int(1)), SeqExpr::log_power(int(-2))]);
        assert_eq!(e.render(), "2^(j) * (1+j)^-2");
        assert_eq!(SeqExpr::geometric(rat(-1, 2)).render(), "2^(-1/2*j)");
        assert_eq!(SeqExpr::pw2(int(0), int(1)).render(), "pw2(s0=0, s1=1)");
        assert_eq!(
            SeqExpr::table(vec![1.0, 2.0, 4.0], SeqExpr::geometric(int(1))).render(),
            "table[1, 2, 4] then 2^(j)"
        );
        assert_eq!(SeqExpr::power(SeqExpr::iter_log(rat(1, 2)), int(3)).render(), "((1+log(1+j))^(1/2))^3");
    }

    #[test]
    fn validation() {
        assert!(SeqExpr::constant(-1.0).validate().is_err());
        assert!(SeqExpr::table(vec![], SeqExpr::one()).validate().is_err());
        assert!(SeqExpr::table(vec![1.0, 0.0], SeqExpr::one()).validate().is_err());
        assert!(SeqExpr::exp_log_pow(int(1), int(1)).validate().is_err());
        assert!(SeqExpr::pw2(int(1), int(1)).validate().is_err());
        let mut deep = SeqExpr::one();
        for _ in 0..40 {
            deep = SeqExpr::power(deep, int(1));
        }
        assert!(deep.validate().is_err());
    }

    #[test]
    fn tail_drops_prefixes() {
        let e = SeqExpr::product(vec![
            SeqExpr::table(vec![5.0, 5.0], SeqExpr::geometric(int(1))),
            SeqExpr::power(SeqExpr::table(vec![1.0; 4], SeqExpr::one()), int(2)),
        ]);
        assert_eq!(e.prefix_len(), 4);
        assert!(!e.tail().contains_table());
    }
}
