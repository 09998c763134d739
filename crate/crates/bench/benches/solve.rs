use criterion::Criterion;
use scss_bench::seeded;
use scss_core::solve;

pub fn bench_small(c: &mut Criterion) {
    let instance = seeded(8, 16, 2, 21);
    c.bench_function("solve/n8_m16_k2", |b| b.iter(|| solve(&instance).unwrap()));
}

pub fn bench_wide(c: &mut Criterion) {
    let instance = seeded(12, 30, 3, 22);
    c.bench_function("solve/n12_m30_k3", |b| b.iter(|| solve(&instance).unwrap()));
}
