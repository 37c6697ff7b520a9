//! Fixtures shared by the criterion benchmarks in `benches/`.

use snarklab_core::composed::construct_paper_graph;
use snarklab_core::graph::random_cubic;
use snarklab_core::{ComposedGraph, Graph};

/// Seeded random cubic graphs of order `n`.
pub fn random_graphs(n: usize, count: u64) -> Vec<Graph> {
    (0..count)
        .map(|seed| random_cubic(n, seed).expect("even n >= 4"))
        .collect()
}

/// The composed graph with `k` copies of H on each of three skeleton edges.
pub fn paper_graph(k: usize) -> ComposedGraph {
    construct_paper_graph(k).expect("k >= 1")
}
