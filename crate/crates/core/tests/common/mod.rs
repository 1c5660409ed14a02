//! Strategies shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;

use gsembed::rational::{int, rat};
use gsembed::{Exponent, Rational, SeqExpr};

pub fn small_rat(max: i128) -> impl Strategy<Value = Rational> {
    (-max..=max, 1i128..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn leaf() -> impl Strategy<Value = SeqExpr> {
    prop_oneof![
        (1u32..4000).prop_map(|v| SeqExpr::constant(v as f64 / 16.0)),
        small_rat(12).prop_map(SeqExpr::geometric),
        small_rat(12).prop_map(SeqExpr::log_power),
        small_rat(12).prop_map(SeqExpr::iter_log),
        (small_rat(6), 1i128..=5).prop_map(|(c, k)| SeqExpr::exp_log_pow(c, rat(k, 6))),
        (small_rat(6), 1i128..=12).prop_map(|(s0, w)| SeqExpr::pw2(s0, s0 + rat(w, 4))),
    ]
}

pub fn expr() -> impl Strategy<Value = SeqExpr> {
    leaf().prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(SeqExpr::product),
            (inner.clone(), small_rat(8).prop_filter("non-zero", |r| *r != int(0)))
                .prop_map(|(b, e)| SeqExpr::power(b, e)),
            (prop::collection::vec(1u32..1000, 1..4), inner)
                .prop_map(|(p, t)| SeqExpr::table(p.into_iter().map(|v| v as f64 / 8.0).collect(), t)),
        ]
    })
}

/// `2^{aj}(1+j)^b(1+log(1+j))^c`, optionally times a unit oscillation.
pub fn canonical() -> impl Strategy<Value = SeqExpr> {
    (small_rat(12), small_rat(8), small_rat(6), prop::option::of((small_rat(4), 1i128..=8))).prop_map(
        |(a, b, c, osc)| {
            let mut f = vec![SeqExpr::geometric(a), SeqExpr::log_power(b), SeqExpr::iter_log(c)];
            if let Some((s0, w)) = osc {
                f.push(SeqExpr::pw2(s0, s0 + rat(w, 4)));
            }
            SeqExpr::product(f)
        },
    )
}

/// Canonical profile without the oscillating factor.
pub fn smooth() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (small_rat(12), small_rat(8), small_rat(6))
}

pub fn smooth_expr(a: Rational, b: Rational, c: Rational) -> SeqExpr {
    SeqExpr::product(vec![SeqExpr::geometric(a), SeqExpr::log_power(b), SeqExpr::iter_log(c)])
}

/// Exponents in the Banach range `[1, ∞]`.
pub fn banach() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        4 => (1i128..=8, 1i128..=4).prop_filter("p >= 1", |(n, d)| n >= d).prop_map(|(n, d)| Exponent::finite(rat(n, d))),
        1 => Just(Exponent::Infinite),
    ]
}

/// Exponents in `(0, ∞]`.
pub fn any_exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        4 => (1i128..=8, 1i128..=4).prop_map(|(n, d)| Exponent::finite(rat(n, d))),
        1 => Just(Exponent::Infinite),
    ]
}

pub fn nonzero(r: Rational) -> bool {
    r != int(0)
}
