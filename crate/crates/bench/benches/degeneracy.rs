use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kchain_bench::pair_chains;
use kchain_core::{count_enumerate_with_workers, count_modular, count_recurrence};

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for spec in pair_chains() {
        group.bench_with_input(BenchmarkId::from_parameter(spec.sites()), &spec, |b, spec| {
            b.iter(|| count_enumerate_with_workers(black_box(spec), 1).unwrap())
        });
    }
    group.finish();
}

fn modular(c: &mut Criterion) {
    let mut group = c.benchmark_group("modular");
    for spec in pair_chains() {
        group.bench_with_input(BenchmarkId::from_parameter(spec.sites()), &spec, |b, spec| {
            b.iter(|| count_modular(black_box(spec.sites()), 2).unwrap())
        });
    }
    group.finish();
}

fn recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("recurrence");
    for n in [100u32, 1_000, 10_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| count_recurrence(black_box(n), 3).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumerate, modular, recurrence);
criterion_main!(benches);
