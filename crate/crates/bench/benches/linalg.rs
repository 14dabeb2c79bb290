use std::hint::black_box;

use amoduli_bench::random_matrix;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for &n in &[20usize, 40, 80] {
        let m = random_matrix(n, n + 5, 0.3, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m).rank()));
    }
    group.finish();
}

fn kernel(c: &mut Criterion) {
    let m = random_matrix(30, 45, 0.25, 7);
    c.bench_function("kernel_30x45", |b| b.iter(|| black_box(&m).kernel_basis().dim()));
}

criterion_group!(benches, rank, kernel);
criterion_main!(benches);
