use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use listcast::graph::{make_hypercube, make_two_cycles};
use listcast::oracle::Oracle;
use listcast::search::{optimal_list_assignment, ListSpace, SearchConfig};
use listcast::sim::{Model, Simulator};
use listcast_bench::fixtures;

fn all_sources(c: &mut Criterion) {
    let mut group = c.benchmark_group("all-sources");
    for n in [255usize, 1023, 4095] {
        for (name, scheme) in fixtures(n) {
            group.bench_with_input(BenchmarkId::new(name, n), &scheme, |b, s| {
                b.iter(|| {
                    let mut sim = Simulator::new(&s.lists);
                    (0..n as u32)
                        .map(|src| sim.completion(src, Model::FullyAdaptive))
                        .max()
                })
            });
        }
    }
    group.finish();
}

fn models(c: &mut Criterion) {
    let mut group = c.benchmark_group("single-source");
    let [(_, scheme), _] = fixtures(1000);
    for model in Model::ALL {
        group.bench_function(model.short_name(), |b| {
            let mut sim = Simulator::new(&scheme.lists);
            b.iter(|| sim.completion(black_box(17), model))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let q3 = make_hypercube(3).unwrap();
    let g2 = make_two_cycles(2).unwrap();
    c.bench_function("oracle/q3", |b| b.iter(|| Oracle::default().broadcast_time_all(black_box(&q3))));
    c.bench_function("oracle/two-cycles-2", |b| {
        b.iter(|| Oracle::default().broadcast_time_all(black_box(&g2)))
    });
}

fn search(c: &mut Criterion) {
    let g1 = make_two_cycles(1).unwrap();
    let cfg = SearchConfig::new(Model::FullyAdaptive, ListSpace::FullPermutations);
    c.bench_function("search/two-cycles-1", |b| b.iter(|| optimal_list_assignment(black_box(&g1), &cfg)));
}

criterion_group!(benches, all_sources, models, oracle, search);
criterion_main!(benches);
