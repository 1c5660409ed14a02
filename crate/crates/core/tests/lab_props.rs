mod common;

use proptest::prelude::*;

use common::banach;
use gsembed::seqspacelab::{
    embedding_norm_closed, embedding_norm_search, entropy_bounds, nuclear_norm_oracle, nuclear_norm_tong, FiniteSection,
};
use gsembed::Exponent;

/// At most four levels of at most `width` coordinates each.
fn sized(width: usize) -> impl Strategy<Value = FiniteSection> {
    (prop::collection::vec((1u32..=64, 1..=width), 1..=4), banach(), banach(), banach(), banach()).prop_map(
        |(levels, p1, q1, p2, q2)| {
            let beta = levels.iter().map(|&(b, _)| b as f64 / 8.0).collect();
            let m = levels.iter().map(|&(_, m)| m).collect();
            FiniteSection::manual(beta, m, p1, q1, p2, q2).unwrap()
        },
    )
}

fn section() -> impl Strategy<Value = FiniteSection> {
    sized(8)
}

/// Within the entropy cap of 20 coordinates.
fn small_section() -> impl Strategy<Value = FiniteSection> {
    sized(5)
}

fn hilbert_or_ellinf(s: FiniteSection, hilbert: bool) -> FiniteSection {
    let e = if hilbert { Exponent::int(2) } else { Exponent::Infinite };
    let (p2, q2) = if hilbert { (e, e) } else { (s.p2, s.q2) };
    FiniteSection::manual(s.beta, s.m, e, e, p2, q2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_stays_below_closed_form(s in section(), seed in any::<u64>()) {
        let closed = embedding_norm_closed(&s);
        let found = embedding_norm_search(&s, 8, seed);
        prop_assert!(found <= closed * (1.0 + 1e-9), "{} > {}", found, closed);
        prop_assert!(found >= closed * 0.99, "{} < 0.99 * {}", found, closed);
    }

    #[test]
    fn tong_matches_exact_oracles(s in section(), hilbert in any::<bool>()) {
        let s = hilbert_or_ellinf(s, hilbert);
        let oracle = nuclear_norm_oracle(&s).unwrap();
        let tong = nuclear_norm_tong(&s).unwrap();
        prop_assert!(oracle.is_exact(), "{:?}", oracle);
        prop_assert!((tong - oracle.value()).abs() <= 1e-9 * oracle.value(), "{} vs {:?}", tong, oracle);
    }

    #[test]
    fn oracle_bounds_are_consistent(s in section()) {
        let oracle = nuclear_norm_oracle(&s).unwrap();
        let tong = nuclear_norm_tong(&s).unwrap();
        let tol = 1e-9 * tong.max(1.0);
        if oracle.is_exact() {
            prop_assert!((tong - oracle.value()).abs() <= tol, "{} vs {:?}", tong, oracle);
        } else {
            prop_assert!(oracle.value() >= tong - tol, "{} vs {:?}", tong, oracle);
        }
    }

    #[test]
    fn nuclear_norm_dominates_operator_norm(s in section()) {
        let closed = embedding_norm_closed(&s);
        prop_assert!(nuclear_norm_tong(&s).unwrap() >= closed * (1.0 - 1e-12));
    }

    #[test]
    fn scaling_weights_scales_norms(s in section(), f in 1u32..=64) {
        let f = f as f64 / 8.0;
        let t = s.scaled(f);
        let (a, b) = (nuclear_norm_tong(&s).unwrap(), nuclear_norm_tong(&t).unwrap());
        prop_assert!((a - b * f).abs() <= 1e-12 * a, "{} vs {} * {}", a, b, f);
        let (a, b) = (embedding_norm_closed(&s), embedding_norm_closed(&t));
        prop_assert!((a - b * f).abs() <= 1e-12 * a);
    }

    #[test]
    fn entropy_lower_below_upper(s in small_section(), k in 1u32..=12) {
        let r = entropy_bounds(&s, k).unwrap();
        prop_assert!(r.lower <= r.upper * (1.0 + 1e-9), "{:?}", r);
        if s.dim() == 1 {
            prop_assert!((r.lower - r.upper).abs() <= 1e-12 * r.upper, "{:?}", r);
        }
    }

    #[test]
    fn first_entropy_number_is_the_norm(s in small_section()) {
        let r = entropy_bounds(&s, 1).unwrap();
        prop_assert!(r.upper <= embedding_norm_closed(&s) * (1.0 + 1e-9), "{:?}", r);
    }
}
