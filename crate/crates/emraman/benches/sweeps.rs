use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use emraman::interaction::raman_rates;
use emraman::spectral::spectral_decomposition;
use emraman::sweep::{linspace, map, map_sequential};
use emraman::{Frequency, PlasmaParams};
use std::hint::black_box;

fn rate_sweep(c: &mut Criterion) {
    let ks = linspace(1.8, 10.0, 400);
    let rate = |k: &f64| {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, *k).unwrap();
        raman_rates(&p, 1.0).unwrap().backward
    };
    let mut g = c.benchmark_group("rate_sweep");
    g.bench_function(BenchmarkId::new("sequential", ks.len()), |b| b.iter(|| map_sequential(black_box(&ks), rate)));
    g.bench_function(BenchmarkId::new("parallel", ks.len()), |b| b.iter(|| map(black_box(&ks), rate)));
    g.finish();
}

fn decomposition_sweep(c: &mut Criterion) {
    let p = PlasmaParams::new(0.0, 0.1, 0.05, 3.0).unwrap();
    let zs: Vec<Frequency> = linspace(-10.0, 10.0, 2000).into_iter().map(|x| Frequency::new(x, [0.3 * x, 1.0])).collect();
    let residual = |z: &Frequency| spectral_decomposition(&p, z).reconstruction().norm();
    let mut g = c.benchmark_group("decomposition_sweep");
    g.bench_function(BenchmarkId::new("sequential", zs.len()), |b| b.iter(|| map_sequential(black_box(&zs), residual)));
    g.bench_function(BenchmarkId::new("parallel", zs.len()), |b| b.iter(|| map(black_box(&zs), residual)));
    g.finish();
}

criterion_group!(benches, rate_sweep, decomposition_sweep);
criterion_main!(benches);
