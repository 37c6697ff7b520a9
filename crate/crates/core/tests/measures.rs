//! Cross-checks between the brute-force oracles on seeded random graphs.

use proptest::prelude::*;
use snarklab_core::colour::{min_fourth_colour, resistance_edge, resistance_vertex};
use snarklab_core::composed::construct_paper_graph;
use snarklab_core::factors::{oddness_bf, weak_oddness_bf, DEFAULT_DIMENSION_CAP};
use snarklab_core::graph::random_cubic;
use snarklab_core::{Error, Graph};

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.vertex_count(), &edges).unwrap()
}

#[test]
fn resistance_variants_agree_on_random_graphs() {
    for seed in 0..50u64 {
        let n = 4 + 2 * (seed as usize % 6);
        let g = random_cubic(n, seed).unwrap();
        let rv = resistance_vertex(&g, None).unwrap().unwrap();
        let re = resistance_edge(&g, None).unwrap().unwrap();
        let (f4, _) = min_fourth_colour(&g).unwrap();
        assert_eq!(rv.value, re.value, "n={n} seed={seed}");
        assert_eq!(re.value, f4, "n={n} seed={seed}");
    }
}

#[test]
fn random_graphs_are_cubic() {
    for seed in 0..100 {
        assert!(random_cubic(16, seed).unwrap().validate_cubic().is_ok());
    }
}

#[test]
fn paper_graph_exceeds_small_budget() {
    let g = construct_paper_graph(2).unwrap().flatten().unwrap().graph;
    assert_eq!(resistance_vertex(&g, Some(3)).unwrap(), None);
}

#[test]
fn paper_graph_is_too_large_for_brute_force() {
    let g = construct_paper_graph(2).unwrap().flatten().unwrap().graph;
    assert_eq!(g.cycle_space_dimension(), 69);
    let err = weak_oddness_bf(&g, DEFAULT_DIMENSION_CAP).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { value: 69, .. }), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn measures_ignore_vertex_labels(half in 2usize..7, seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        let g = random_cubic(2 * half, seed).unwrap();
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(shuffle));
        let h = relabel(&g, &perm);
        let rho = |g: &Graph| resistance_vertex(g, None).unwrap().unwrap().value;
        let weak = |g: &Graph| weak_oddness_bf(g, DEFAULT_DIMENSION_CAP).unwrap().odd_components;
        let odd = |g: &Graph| oddness_bf(g).unwrap().map(|w| w.odd_components);
        prop_assert_eq!(rho(&g), rho(&h));
        prop_assert_eq!(weak(&g), weak(&h));
        prop_assert_eq!(odd(&g), odd(&h));
    }

    #[test]
    fn chain_holds_on_random_graphs(half in 2usize..8, seed in any::<u64>()) {
        let g = random_cubic(2 * half, seed).unwrap();
        let rho = resistance_vertex(&g, None).unwrap().unwrap().value;
        let weak = weak_oddness_bf(&g, DEFAULT_DIMENSION_CAP).unwrap();
        prop_assert!(rho <= weak.odd_components);
        prop_assert_eq!(weak.odd_components % 2, 0);
        if let Some(odd) = oddness_bf(&g).unwrap() {
            prop_assert!(weak.odd_components <= odd.odd_components);
            prop_assert_eq!(odd.odd_components % 2, 0);
        }
    }
}
