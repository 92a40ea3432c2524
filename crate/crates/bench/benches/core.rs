use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qmoment_bench::{hermitian, measure, pd_sequence};
use qmoment_core::measures::synthesize_sequence;
use qmoment_core::moments::{caratheodory_extend, negative_squares};
use qmoment_core::qlinalg::hermitian_eigen;
use qmoment_core::slicefn::{caratheodory_kernel, TailBound};
use qmoment_core::{CaratheodoryFunction, Quaternion};

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eigen");
    for n in [2, 4, 8, 16] {
        let h = hermitian(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| hermitian_eigen(black_box(h))));
    }
    group.finish();
}

fn toeplitz(c: &mut Criterion) {
    let seq = pd_sequence(2, 8);
    c.bench_function("negative_squares s=2 N=8", |b| b.iter(|| negative_squares(black_box(&seq), 8)));
    let seed = pd_sequence(2, 2);
    c.bench_function("caratheodory_extend s=2 +4", |b| b.iter(|| caratheodory_extend(black_box(&seed), 4)));
}

fn synthesis(c: &mut Criterion) {
    let nu = measure(2, 4);
    c.bench_function("synthesize_sequence s=2 n=64", |b| b.iter(|| synthesize_sequence(black_box(&nu), 64)));
}

fn kernel(c: &mut Criterion) {
    let phi = CaratheodoryFunction::new(pd_sequence(1, 80), TailBound::Mass(10.0));
    let (p, q) = (Quaternion::new(0.1, 0.2, -0.3, 0.1), Quaternion::new(-0.2, 0.0, 0.1, 0.3));
    c.bench_function("caratheodory_kernel M=60", |b| b.iter(|| caratheodory_kernel(&phi, black_box(p), black_box(q), 60)));
}

criterion_group!(benches, eigen, toeplitz, synthesis, kernel);
criterion_main!(benches);
