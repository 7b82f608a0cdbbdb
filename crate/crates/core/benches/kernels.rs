use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperclique::oracle::{
    exhaustive_search_with, verify_bound_soundness_with, verify_kkt_with, Constraint, DegreeLimit, SearchSpec,
};
use hyperclique::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn kkt(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_kkt(6,3)");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_kkt_with(black_box(6), 3, exec).unwrap())
        });
    }
    g.finish();
}

fn soundness(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_bound_soundness(6,2)");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_bound_soundness_with(black_box(6), 2, exec).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let spec = SearchSpec {
        n: 6,
        s: 3,
        t: 4,
        constraint: Constraint::Edges { m: 10 },
        degree: Some(DegreeLimit { i: 2, delta: 3 }),
    };
    let mut g = c.benchmark_group("exhaustive_search(6,3,4,m=10)");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exhaustive_search_with(black_box(&spec), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, kkt, soundness, search);
criterion_main!(benches);
