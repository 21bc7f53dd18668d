//! Sequential against parallel execution of the search passes.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use delshadow_verify::engine::ShadowTable;
use delshadow_verify::{check_lemma7, Execution, SearchBudget};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn label(exec: Execution) -> &'static str {
    match exec {
        Execution::Sequential => "sequential",
        Execution::Parallel => "parallel",
    }
}

fn full_profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_profile");
    group.sample_size(10);
    for (n, k) in [(4, 1), (2, 3), (3, 2)] {
        let table = ShadowTable::cube(n, k, 0).unwrap();
        for exec in MODES {
            group.bench_with_input(BenchmarkId::new(label(exec), format!("n{n}k{k}")), &table, |b, t| {
                b.iter(|| black_box(t.full_profile(exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn single_size(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_size");
    group.sample_size(10);
    let cube = ShadowTable::cube(3, 3, 0).unwrap();
    let larger = ShadowTable::cube(4, 2, 0).unwrap();
    for exec in MODES {
        group.bench_function(BenchmarkId::new(label(exec), "n3k3m4"), |b| {
            b.iter(|| black_box(cube.scan_size(4, exec).unwrap()))
        });
        group.bench_function(BenchmarkId::new(label(exec), "n4k2sample"), |b| {
            b.iter(|| black_box(larger.sample_size(40, 50_000, 7, exec).unwrap()))
        });
    }
    group.finish();
}

fn compression_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("compression_sweep");
    group.sample_size(10);
    for exec in MODES {
        let budget = SearchBudget {
            samples: 1_000,
            ..SearchBudget::exhaustive()
        }
        .with_execution(exec);
        group.bench_function(label(exec), |b| b.iter(|| black_box(check_lemma7(&[(2, 2), (3, 1)], &budget).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, full_profile, single_size, compression_sweep);
criterion_main!(benches);
