use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use metacirc_bench::standard_graph;
use metacirc_core::autosearch::{automorphism_group, search};
use metacirc_core::classify::{classify_spec, enumerate_candidates};
use metacirc_core::{GroupSpec, Mode, PermGroup};

fn group_arithmetic(c: &mut Criterion) {
    let spec = GroupSpec::new(23, 11, 2, 1).unwrap();
    let g = spec.element(5, 7, 0);
    let h = spec.element(17, 3, 0);
    c.bench_function("mul 23:11", |b| b.iter(|| spec.mul(black_box(&g), black_box(&h))));
    c.bench_function("pow 23:11", |b| b.iter(|| spec.pow(black_box(&g), black_box(1_000_003))));
    c.bench_function("candidates 23:11", |b| b.iter(|| enumerate_candidates(&spec, 1000).unwrap().len()));
}

fn graph_search(c: &mut Criterion) {
    let (_, small) = standard_graph(7, 3, 2, 1);
    let (_, large) = standard_graph(23, 11, 2, 1);
    c.bench_function("search 21 vertices", |b| b.iter(|| search(black_box(&small))));
    c.bench_function("search 253 vertices", |b| b.iter(|| search(black_box(&large))));
    let gens = automorphism_group(&large).generators().to_vec();
    c.bench_function("schreier-sims 253 vertices", |b| {
        b.iter(|| PermGroup::new(253, gens.clone()).unwrap().order())
    });
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for (m, n, r) in [(7, 3, 2), (11, 5, 3)] {
        let spec = GroupSpec::new(m, n, r, 1).unwrap();
        group.bench_function(format!("{m}:{n}"), |b| b.iter(|| classify_spec(&spec, Mode::Oracle).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, group_arithmetic, graph_search, classification);
criterion_main!(benches);
