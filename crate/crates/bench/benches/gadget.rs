use criterion::Criterion;
use scss_core::hardness::{certify, clique_to_gridtiling, gridtiling_to_scss};

pub fn bench_layout(c: &mut Criterion) {
    let gt2 = clique_to_gridtiling(2, &[(0, 1)], 2).unwrap();
    let gt3 = clique_to_gridtiling(4, &[(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)], 3).unwrap();
    let mut group = c.benchmark_group("gadget_layout");
    group.bench_function("k2_n2", |b| b.iter(|| gridtiling_to_scss(&gt2).unwrap()));
    group.bench_function("k3_n4", |b| b.iter(|| gridtiling_to_scss(&gt3).unwrap()));
    group.finish();
}

pub fn bench_certify(c: &mut Criterion) {
    let gt = clique_to_gridtiling(2, &[(0, 1)], 2).unwrap();
    c.bench_function("gadget_certify/k2_n2", |b| b.iter(|| certify(&gt, 10_000).unwrap()));
}
