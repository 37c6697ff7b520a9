//! Builders, flattening and the profile algebra.

use proptest::prelude::*;
use snarklab_core::blockdp::{
    block_colour_profile, colour_profile, compose_series, compose_series_colour, factor_profile,
    solve_composed, solve_composed_resistance,
};
use snarklab_core::colour::resistance_vertex;
use snarklab_core::composed::{construct_paper_graph, VertexOrigin};
use snarklab_core::factors::{oddness_bf, weak_oddness_bf, DEFAULT_DIMENSION_CAP};
use snarklab_core::format::{parse_edgelist, parse_graph6, write_edgelist};
use snarklab_core::graph::is_isomorphic;
use snarklab_core::twopole::{build_h, build_h2, identity_pole, petersen, pole_p};
use snarklab_core::{ColourProfile, ComposedGraph, Cost, FactorMode, Graph, SeriesBlock};

#[test]
fn petersen_graph6_matches_builder() {
    let g = parse_graph6("IheA@GUAo").unwrap();
    assert!(is_isomorphic(&g, &petersen()));
}

#[test]
fn flattened_paper_graph_round_trips() {
    let c = construct_paper_graph(2).unwrap();
    let flat = c.flatten().unwrap();
    let g = &flat.graph;
    assert_eq!((g.vertex_count(), g.edge_count()), (136, 204));
    assert_eq!(parse_edgelist(&write_edgelist(g)).unwrap(), *g);

    let skeleton = flat
        .origin
        .iter()
        .filter(|o| matches!(o, VertexOrigin::Skeleton(_)))
        .count();
    let in_blocks = flat
        .origin
        .iter()
        .filter(|o| matches!(o, VertexOrigin::Block { .. }))
        .count();
    assert_eq!((skeleton, in_blocks), (4, 132));
}

#[test]
fn paper_graph_k1_is_cubic_and_bridgeless() {
    let g = construct_paper_graph(1).unwrap().flatten().unwrap().graph;
    assert!(g.validate_cubic().is_ok());
    assert!(g.is_bridgeless().unwrap());
    assert_eq!(g.vertex_count(), 4 + 3 * 22);
}

#[test]
fn factor_profile_unit_law_and_additivity() {
    for mode in [FactorMode::EvenFactor, FactorMode::TwoFactor] {
        let id = factor_profile(&identity_pole(), mode).unwrap();
        for pole in [pole_p(), build_h()] {
            let x = factor_profile(&pole, mode).unwrap();
            assert_eq!(compose_series(&id, &x).unwrap(), x);
            assert_eq!(compose_series(&x, &id).unwrap(), x);
        }
    }
    let h = factor_profile(&build_h(), FactorMode::EvenFactor).unwrap();
    assert_eq!(compose_series(&h, &h).unwrap().out, Cost::finite(4));
}

#[test]
fn colour_profile_laws() {
    let id = ColourProfile::identity();
    let (p, _) = colour_profile(&pole_p(), None).unwrap();
    assert_eq!(compose_series_colour(&id, &p), p);
    let pp = compose_series_colour(&p, &p);
    assert!(pp.diff <= p.same + Cost::finite(1));

    let (h, _) = colour_profile(&build_h(), None).unwrap();
    let composed = compose_series_colour(&h, &h);
    // the direct search, cut off at two deletions, agrees wherever it reaches
    let (direct, _) = colour_profile(&build_h2(2).unwrap(), Some(2)).unwrap();
    for same in [true, false] {
        let visible = composed.get(same) <= Cost::finite(2);
        let expect = if visible {
            composed.get(same)
        } else {
            Cost::INF
        };
        assert_eq!(direct.get(same), expect, "same = {same}");
    }
    assert_eq!(
        block_colour_profile(&SeriesBlock::h2(2).unwrap()).unwrap(),
        composed
    );
}

fn block(kind: u8) -> Option<SeriesBlock> {
    match kind {
        0 => None,
        1 => Some(SeriesBlock::identity()),
        2 => Some(SeriesBlock::pole_p()),
        _ => Some(SeriesBlock::pole_p().then(SeriesBlock::identity())),
    }
}

fn composed(skeleton: Graph, kinds: &[u8]) -> ComposedGraph {
    let mut c = ComposedGraph::new(skeleton);
    for (e, &k) in kinds.iter().enumerate() {
        if let Some(b) = block(k) {
            c = c.insert_pole_into_edge(e, b).unwrap();
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_matches_brute_force(kinds in proptest::collection::vec(0u8..4, 6), two in 0usize..6) {
        // at most two P copies keep the flattened graph small
        let mut kinds = kinds;
        let mut seen = 0;
        for (i, k) in kinds.iter_mut().enumerate() {
            if *k >= 2 {
                seen += 1;
                if seen > 2 || i == two {
                    *k = 1;
                }
            }
        }
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
        let c = composed(k4, &kinds);
        let g = c.flatten().unwrap().graph;
        prop_assert!(g.validate_cubic().is_ok());
        let weak = weak_oddness_bf(&g, DEFAULT_DIMENSION_CAP).unwrap().odd_components;
        prop_assert_eq!(solve_composed(&c, FactorMode::EvenFactor).unwrap().value, weak);
        let odd = oddness_bf(&g).unwrap().map(|w| w.odd_components);
        prop_assert_eq!(solve_composed(&c, FactorMode::TwoFactor).ok().map(|s| s.value), odd);
        let rho = resistance_vertex(&g, None).unwrap().unwrap().value;
        prop_assert_eq!(solve_composed_resistance(&c).unwrap().value, rho);
    }
}
