use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubex_core::gallery::{gen_grid, TreeOfFlats};
use cubex_core::morse::{SampleSpec, SublinearFunction};
use cubex_core::{CubeComplex, Vertex};

fn grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid");
    for n in [8, 16, 32] {
        let g = gen_grid(n, n).unwrap();
        let (a, b, d) = (Vertex::from_index(0), Vertex::from_index(n * n - 1), Vertex::from_index(n - 1));
        group.bench_with_input(BenchmarkId::new("median", n), &g, |bench, g| {
            bench.iter(|| g.median(black_box(a), black_box(b), black_box(d)))
        });
        group.bench_with_input(BenchmarkId::new("interval", n), &g, |bench, g| {
            bench.iter(|| g.interval(black_box(a), black_box(b)))
        });
        let corners = g.vertex_set([a, d]);
        group.bench_with_input(BenchmarkId::new("halfspace_hull", n), &g, |bench, g| {
            bench.iter(|| g.halfspace_hull(black_box(&corners)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("hull_by_joins", n), &g, |bench, g| {
            bench.iter(|| g.hull_by_joins(black_box(&corners)).unwrap())
        });
        if n > 16 {
            continue;
        }
        // Validation checks every vertex triple, so it is only timed on small grids.
        let json = g.to_json_string();
        group.bench_with_input(BenchmarkId::new("load_and_validate", n), &json, |bench, json| {
            bench.iter(|| CubeComplex::from_json_str(black_box(json)).unwrap())
        });
    }
    group.finish();
}

fn spine(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree_of_flats");
    group.sample_size(20);
    for n in [10, 20] {
        let model = TreeOfFlats::generate(n, 2, 2).unwrap();
        let complex = model.complex();
        let path = model.ray_path();
        let sqrt = SublinearFunction::sqrt();
        group.bench_function(BenchmarkId::new("verify_c_chain", n), |bench| {
            bench.iter(|| complex.chain_along_path(&path, model.c_walls(), &sqrt).unwrap())
        });
        group.bench_function(BenchmarkId::new("greedy_chain", n), |bench| {
            bench.iter(|| complex.find_excursion_chain(&path, &sqrt).unwrap())
        });
        let hull = complex.hull(&complex.vertex_set(model.ray().iter().copied())).unwrap();
        group.bench_function(BenchmarkId::new("contraction_profile", n), |bench| {
            bench.iter(|| complex.contraction_profile(&hull, &sqrt, SampleSpec::Exhaustive).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, grids, spine);
criterion_main!(benches);
