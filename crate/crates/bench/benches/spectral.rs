use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dbk_bench::chebyshev_models;
use dbk_core::{find_spectrum, matrix_model, rank_one_extension, C};

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_spectrum");
    for (n, space) in chebyshev_models() {
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, s| {
            b.iter(|| find_spectrum(s, 0.7, None).unwrap())
        });
    }
    group.finish();
}

fn rank_one(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_one_eigensolve");
    for (n, space) in chebyshev_models() {
        let model = matrix_model(&space, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &model, |b, m| {
            b.iter(|| {
                let s = rank_one_extension(m, 0.7, dbk_core::BETA_MIN).unwrap();
                dbk_core::extensions::symmetric_eigenvalues(s)
            })
        });
    }
    group.finish();
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    let (z, w) = (C::new(0.3, 0.4), C::new(-0.2, 0.1));
    for (n, space) in chebyshev_models() {
        group.bench_with_input(BenchmarkId::new("off_diagonal", n), &space, |b, s| b.iter(|| s.kernel(z, w).unwrap()));
        group.bench_with_input(BenchmarkId::new("seam", n), &space, |b, s| {
            b.iter(|| s.kernel(z, z.conj() + C::new(1e-9, 0.0)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum, rank_one, kernel);
criterion_main!(benches);
