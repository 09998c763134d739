use criterion::Criterion;
use scss_bench::seeded;
use scss_core::all_pairs_shortest_paths;

pub fn bench_apsp(c: &mut Criterion) {
    let dense = seeded(64, 512, 1, 17).graph;
    let sparse = seeded(128, 256, 1, 18).graph;
    let mut group = c.benchmark_group("apsp");
    group.bench_function("n64_m512", |b| b.iter(|| all_pairs_shortest_paths(&dense)));
    group.bench_function("n128_m256", |b| b.iter(|| all_pairs_shortest_paths(&sparse)));
    group.finish();
}
