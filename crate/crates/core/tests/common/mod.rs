#![allow(dead_code)]

use bihole::Graph;
use proptest::prelude::*;

/// Graphs on `lo..=hi` vertices, each pair present independently.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|&(_, b)| b)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A graph with a permutation of its vertex set.
pub fn graph_and_permutation(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(lo, hi).prop_flat_map(|g| {
        let ids: Vec<usize> = (0..g.n()).collect();
        (Just(g), Just(ids).prop_shuffle())
    })
}
