use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use moonshine_core::modular::{discriminant, eta_product_delta, j_expansion};
use moonshine_core::moonshine::knz_verify;
use moonshine_core::sl2z::reduce_to_fundamental;
use moonshine_bench::hard_points;

fn j_coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("j_expansion");
    group.sample_size(10);
    for order in [100i64, 300, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &n| {
            b.iter(|| j_expansion(n).unwrap())
        });
    }
    group.finish();
}

fn delta_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta");
    group.sample_size(10);
    group.bench_function("eisenstein_500", |b| b.iter(|| discriminant(500).unwrap()));
    group.bench_function("eta_product_500", |b| b.iter(|| eta_product_delta(500).unwrap()));
    group.finish();
}

fn knz(c: &mut Criterion) {
    let mut group = c.benchmark_group("knz");
    group.sample_size(10);
    for order in [2u32, 4, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &n| {
            b.iter(|| knz_verify(n).unwrap())
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let points = hard_points(200);
    c.bench_function("reduce_200_points", |b| {
        b.iter(|| {
            for p in &points {
                reduce_to_fundamental(p);
            }
        })
    });
}

criterion_group!(benches, j_coefficients, delta_routes, knz, reduction);
criterion_main!(benches);
