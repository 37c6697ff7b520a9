use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use snarklab_bench::{paper_graph, random_graphs};
use snarklab_core::blockdp::{
    colour_profile, factor_profile, solve_composed, solve_composed_resistance,
};
use snarklab_core::colour::{resistance_vertex, three_edge_colour, TerminalConstraint};
use snarklab_core::composed::construct_variant_gprime;
use snarklab_core::factors::{oddness_bf, weak_oddness_bf, DEFAULT_DIMENSION_CAP};
use snarklab_core::twopole::{build_h, petersen};
use snarklab_core::FactorMode;

fn colouring(c: &mut Criterion) {
    let p = petersen();
    c.bench_function("colour/petersen refutation", |b| {
        b.iter(|| three_edge_colour(black_box(&p), &TerminalConstraint::Any).unwrap())
    });
    let g = paper_graph(2).flatten().unwrap().graph;
    c.bench_function("colour/paper graph refutation", |b| {
        b.iter(|| three_edge_colour(black_box(&g), &TerminalConstraint::Any).unwrap())
    });
}

fn oracles(c: &mut Criterion) {
    let p = petersen();
    c.bench_function("oracle/weak oddness petersen", |b| {
        b.iter(|| weak_oddness_bf(black_box(&p), DEFAULT_DIMENSION_CAP).unwrap())
    });
    let mut group = c.benchmark_group("oracle/random n=16");
    let graphs = random_graphs(16, 8);
    group.bench_function(BenchmarkId::new("resistance", 8), |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| resistance_vertex(g, None).unwrap().unwrap().value)
                .sum::<usize>()
        })
    });
    group.bench_function(BenchmarkId::new("oddness", 8), |b| {
        b.iter(|| graphs.iter().filter_map(|g| oddness_bf(g).unwrap()).count())
    });
    group.finish();
}

fn profiles(c: &mut Criterion) {
    let h = build_h();
    c.bench_function("profile/H even factor", |b| {
        b.iter(|| factor_profile(black_box(&h), FactorMode::EvenFactor).unwrap())
    });
    c.bench_function("profile/H colour", |b| {
        b.iter(|| colour_profile(black_box(&h), None).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let g = paper_graph(2);
    c.bench_function("decomposition/paper graph weak oddness", |b| {
        b.iter(|| solve_composed(black_box(&g), FactorMode::EvenFactor).unwrap())
    });
    c.bench_function("decomposition/paper graph oddness", |b| {
        b.iter(|| solve_composed(black_box(&g), FactorMode::TwoFactor).unwrap())
    });
    c.bench_function("decomposition/paper graph resistance", |b| {
        b.iter(|| solve_composed_resistance(black_box(&g)).unwrap())
    });
    let gp = construct_variant_gprime().unwrap();
    c.bench_function("decomposition/variant resistance", |b| {
        b.iter(|| solve_composed_resistance(black_box(&gp)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = colouring, oracles, profiles, decomposition
}
criterion_main!(benches);
