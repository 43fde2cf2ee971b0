mod common;

use bihole::hole::{find_hole, naive_bipartite_hole_number, naive_hole_oracle};
use bihole::oracle::brute_independence_number;
use bihole::{bipartite_hole_number, Graph};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn find_hole_matches_naive(g in common::graph(1, 8)) {
        let n = g.n();
        for s in 1..=n {
            for t in 1..=n - s.min(n) {
                let fast = find_hole(&g, s, t);
                prop_assert_eq!(fast.is_some(), naive_hole_oracle(&g, s, t).is_some(), "split ({}, {})", s, t);
                if let Some(w) = fast {
                    prop_assert!(w.validates(&g, s, t));
                }
            }
        }
    }

    #[test]
    fn value_matches_naive_and_certifies(g in common::graph(0, 9)) {
        let cert = bipartite_hole_number(&g);
        prop_assert_eq!(cert.value, naive_bipartite_hole_number(&g));
        if g.n() > 0 {
            prop_assert!(cert.validates(&g));
        }
    }

    #[test]
    fn splits_are_symmetric(g in common::graph(1, 9), s in 1usize..5, t in 1usize..5) {
        prop_assert_eq!(find_hole(&g, s, t).is_some(), find_hole(&g, t, s).is_some());
    }

    #[test]
    fn adding_an_edge_never_increases(g in common::graph(2, 10), a in 0usize..10, b in 0usize..10) {
        let (u, v) = (a % g.n(), b % g.n());
        prop_assume!(u != v);
        let h = g.add_edge(u, v).unwrap();
        prop_assert!(bipartite_hole_number(&h).value <= bipartite_hole_number(&g).value);
    }

    #[test]
    fn at_least_independence_number(g in common::graph(1, 10)) {
        prop_assert!(bipartite_hole_number(&g).value >= brute_independence_number(&g));
    }

    #[test]
    fn invariant_under_relabeling((g, perm) in common::graph_and_permutation(0, 12)) {
        prop_assert_eq!(
            bipartite_hole_number(&g).value,
            bipartite_hole_number(&g.permuted(&perm)).value
        );
    }
}

#[test]
fn empty_and_complete_extremes() {
    for n in 1..=12 {
        assert_eq!(bipartite_hole_number(&Graph::empty(n).unwrap()).value, n);
        let k = Graph::empty(n).unwrap().complement();
        assert_eq!(bipartite_hole_number(&k).value, 1);
    }
}
