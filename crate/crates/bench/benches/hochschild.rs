use std::hint::black_box;

use amoduli::hochschild::{differential_rank, hh_dim, vanishing_scan};
use amoduli_bench::{cusp_algebra, diagonal_algebra};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn differential(c: &mut Criterion) {
    let e = cusp_algebra(1);
    let mut group = c.benchmark_group("differential_rank_cusp");
    for &t in &[-2i32, -4, -6] {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| differential_rank(black_box(&e), 2, t))
        });
    }
    group.finish();
}

fn cells(c: &mut Criterion) {
    let e = diagonal_algebra();
    c.bench_function("hh2_diagonal_t-3", |b| b.iter(|| hh_dim(black_box(&e), 2, -3)));
    let cusp = cusp_algebra(1);
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("cusp_i3_t-6", |b| b.iter(|| vanishing_scan(black_box(&cusp), 3, -6)));
    group.finish();
}

criterion_group!(benches, differential, cells);
criterion_main!(benches);
