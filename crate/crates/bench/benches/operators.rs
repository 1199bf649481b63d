use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockcalc_bench::worked_symbol;
use fockcalc_core::ops::assemble_matrix;
use fockcalc_core::runner::{run_suite, RunConfig};
use fockcalc_core::series::{self, FockParams};
use fockcalc_core::Complex;

fn assemble(c: &mut Criterion) {
    let sym = worked_symbol();
    let mut group = c.benchmark_group("assemble_matrix");
    for n in [16, 32, 64, 128] {
        let params = FockParams::new(1.0, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &params, |b, &p| {
            b.iter(|| assemble_matrix(black_box(&sym), p).unwrap())
        });
    }
    group.finish();
}

fn series_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    for n in [32, 128] {
        let p = FockParams::new(1.0, n).unwrap();
        let f = series::exp_linear(Complex::new(0.3, 0.1), Complex::new(1.0, 0.0), p).unwrap();
        let g = series::kernel(Complex::new(0.2, -0.5), p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(f, g), |b, (f, g)| {
            b.iter(|| series::mul(black_box(f), black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let cfg = RunConfig::default();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("default", |b| b.iter(|| run_suite(black_box(&cfg)).unwrap()));
    group.finish();
}

criterion_group!(benches, assemble, series_mul, suite);
criterion_main!(benches);
