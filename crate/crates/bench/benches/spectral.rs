use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kchain_core::{all_roots, dominant_root, per_site_sequence};

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_roots");
    for k in [2u32, 8, 16, 32] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| all_roots(black_box(k), 1e-12).unwrap())
        });
    }
    group.finish();
    c.bench_function("dominant_root/16", |b| {
        b.iter(|| dominant_root(black_box(16), 1e-12).unwrap())
    });
}

fn convergence(c: &mut Criterion) {
    c.bench_function("per_site_sequence/k2_n2000", |b| {
        b.iter(|| per_site_sequence(2, black_box(&[500, 1000, 2000])).unwrap())
    });
}

criterion_group!(benches, roots, convergence);
criterion_main!(benches);
