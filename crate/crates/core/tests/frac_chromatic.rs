mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use sicgraph_core::enumerate::enumerate_order;
use sicgraph_core::fracchrom::{frac_chromatic, frac_chromatic_float, frac_chromatic_value, verify_certificate, Rational};
use sicgraph_core::Graph;

fn to_big(q: common::Q) -> Rational {
    Rational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

#[test]
fn matches_vertex_enumeration_oracle_through_order_7() {
    let mut checked = 0;
    for n in 1..=7 {
        enumerate_order(n, &mut |g| {
            let (x, cert) = frac_chromatic(g);
            assert_eq!(x, to_big(common::frac_chromatic(g)), "{g:?}");
            assert_eq!(verify_certificate(g, &cert), Ok(true));
            checked += 1;
        })
        .unwrap();
    }
    assert_eq!(checked, 1 + 2 + 4 + 11 + 34 + 156 + 1044);
}

#[test]
fn float_route_agrees_through_order_8() {
    for n in 1..=8 {
        enumerate_order(n, &mut |g| {
            assert_eq!(frac_chromatic_float(g).as_ref(), Ok(&frac_chromatic_value(g)), "{g:?}");
        })
        .unwrap();
    }
}

#[test]
fn spot_values() {
    for k in 1..=4i64 {
        let c = Graph::cycle(2 * k as usize + 1).unwrap();
        assert_eq!(frac_chromatic_value(&c), Rational::new((2 * k + 1).into(), k.into()));
    }
    for n in 1..=8 {
        assert_eq!(frac_chromatic_value(&Graph::complete(n).unwrap()), Rational::from_integer(n.into()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn union_takes_max_and_join_adds(a in common::graph(1, 6), b in common::graph(1, 6)) {
        let (xa, xb) = (frac_chromatic_value(&a), frac_chromatic_value(&b));
        prop_assert_eq!(frac_chromatic_value(&a.union(&b).unwrap()), xa.clone().max(xb.clone()));
        prop_assert_eq!(frac_chromatic_value(&a.join(&b).unwrap()), xa + xb);
    }

    #[test]
    fn bounded_by_clique_and_order(g in common::graph(1, 10)) {
        let x = frac_chromatic_value(&g);
        prop_assert!(x >= Rational::from_integer(common::clique_number(&g).into()));
        prop_assert!(x <= Rational::from_integer(g.order().into()));
    }
}
