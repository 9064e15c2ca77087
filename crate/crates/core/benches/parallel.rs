//! Sequential vs parallel execution of the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hilbert_forms::normest::{build_truncated_with, KernelOperator, MatrixFreeKernel};
use hilbert_forms::verify::{lemma4_at, run_suite_with, Suite};
use hilbert_forms::{bounds, Alpha, Execution};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn dense_section(c: &mut Criterion) {
    let alpha = Alpha::new(1.5).unwrap();
    let mut group = c.benchmark_group("dense_build");
    for n in [512usize, 2048] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| build_truncated_with(alpha, black_box(n), exec).unwrap())
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("dense_apply");
    for n in [512usize, 2048] {
        let x: Vec<f64> = (1..=n).map(|m| (m as f64).powf(-0.5)).collect();
        let mut y = vec![0.0; n];
        for (name, exec) in MODES {
            let m = build_truncated_with(alpha, n, exec).unwrap();
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| m.apply(black_box(&x), &mut y))
            });
        }
        let free = MatrixFreeKernel::new(alpha, n).unwrap();
        group.bench_with_input(BenchmarkId::new("matrix_free", n), &n, |b, _| {
            b.iter(|| free.apply(black_box(&x), &mut y))
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_alpha_sup");
    group.sample_size(20);
    let alpha = Alpha::new(2.5).unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| bounds::s_alpha_sup_with(alpha, black_box(100_000), 1e-12, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("lemma4_suite");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| run_suite_with(Suite::Lemma4, exec).unwrap())
        });
    }
    group.bench_function("single_alpha", |b| {
        b.iter(|| lemma4_at(black_box(1.5)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, dense_section, sweeps);
criterion_main!(benches);
