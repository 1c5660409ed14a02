mod common;

use proptest::prelude::*;

use common::{canonical, expr};
use gsembed::rational::{rat, to_f64};
use gsembed::seqcore::boyd_indices;
use gsembed::seqdsl::{canonicalize, parse};
use gsembed::SeqExpr;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(e in expr()) {
        let text = e.render();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
    }

    #[test]
    fn geometric_log_products_are_monotone(
        rates in prop::collection::vec((1i128..=12, 1i128..=4), 1..4),
        logs in prop::collection::vec(0i128..=12, 0..3),
    ) {
        let mut f: Vec<SeqExpr> = rates.iter().map(|&(n, d)| SeqExpr::geometric(rat(n, d))).collect();
        f.extend(logs.iter().map(|&b| SeqExpr::log_power(rat(b, 2))));
        let e = SeqExpr::product(f);
        let mut prev = e.eval_log2(0);
        for j in 1..300 {
            let cur = e.eval_log2(j);
            prop_assert!(cur > prev, "{} not increasing at j = {}", e, j);
            prev = cur;
        }
    }

    #[test]
    fn rate_is_additive(x in canonical(), y in canonical()) {
        let (px, py) = (canonicalize(&x), canonicalize(&y));
        let pxy = canonicalize(&SeqExpr::product(vec![x, y]));
        if let (Some(a), Some(b)) = (px.rate, py.rate) {
            prop_assert_eq!(pxy.rate, Some(a + b));
        }
    }

    #[test]
    fn boyd_envelope(e in canonical()) {
        let bi = boyd_indices(&e, 256);
        let (lo, hi) = (to_f64(&bi.lower.exact().unwrap()), to_f64(&bi.upper.exact().unwrap()));
        for eps in [0.25, 0.0625] {
            // log₂ of e_j / 2^{(lo−ε)j} and of 2^{(hi+ε)j} / e_j
            let below: Vec<f64> = (0..=512).map(|j| e.eval_log2(j) - (lo - eps) * j as f64).collect();
            let above: Vec<f64> = (0..=512).map(|j| (hi + eps) * j as f64 - e.eval_log2(j)).collect();
            let c0 = below[..=256].iter().cloned().fold(f64::INFINITY, f64::min);
            let c1 = above[..=256].iter().cloned().fold(f64::INFINITY, f64::min);
            // constants fitted on j ≤ 256 still hold up to 512
            let tail_below = below[256..].iter().cloned().fold(f64::INFINITY, f64::min);
            let tail_above = above[256..].iter().cloned().fold(f64::INFINITY, f64::min);
            prop_assert!(tail_below >= c0 - 1e-9 && tail_above >= c1 - 1e-9, "{}: eps = {}", e, eps);
        }
    }
}
