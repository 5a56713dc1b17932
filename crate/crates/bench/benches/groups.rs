use criterion::{criterion_group, criterion_main, Criterion};
use moonshine_core::groups::{
    composition_census, conjugacy_classes, jordan_holder_factors, make_alternating, make_dihedral,
    make_symmetric, normal_subgroups,
};

fn classes(c: &mut Criterion) {
    let s6 = make_symmetric(6).unwrap();
    c.bench_function("classes_s6", |b| b.iter(|| conjugacy_classes(&s6)));
    let a5 = make_alternating(5).unwrap();
    c.bench_function("normal_subgroups_a5", |b| b.iter(|| normal_subgroups(&a5)));
}

fn series(c: &mut Criterion) {
    let d96 = make_dihedral(96).unwrap();
    let s4 = make_symmetric(4).unwrap();
    let mut group = c.benchmark_group("composition");
    group.sample_size(10);
    group.bench_function("census_d96", |b| b.iter(|| composition_census(&d96)));
    group.bench_function("jordan_holder_s4", |b| b.iter(|| jordan_holder_factors(&s4).unwrap()));
    group.finish();
}

criterion_group!(benches, classes, series);
criterion_main!(benches);
