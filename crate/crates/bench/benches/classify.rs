use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use isopair::classify::{elementary_decompose, invariants, normal_form, random_pair};
use isopair::Subspace;
use std::hint::black_box;

fn bench_rref(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..12).map(|i| (0..12).map(|j| ((i * 7 + j * 3) % 11) as i64 - 5).collect()).collect();
    c.bench_function("rref 12x12", |b| b.iter(|| Subspace::from_ints(12, black_box(&rows))));
}

fn bench_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    for dim in [4usize, 8, 12] {
        let pair = random_pair(dim, dim - dim % 2 - 2 * (dim / 4), 7).unwrap().pair;
        group.bench_with_input(BenchmarkId::new("invariants", dim), &pair, |b, p| b.iter(|| invariants(p).unwrap()));
        group.bench_with_input(BenchmarkId::new("decompose", dim), &pair, |b, p| {
            b.iter(|| elementary_decompose(p).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("normal_form", dim), &pair, |b, p| b.iter(|| normal_form(p).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_rref, bench_pipeline);
criterion_main!(benches);
