use criterion::{criterion_group, criterion_main, Criterion};
use tcaibm::eval::estimate_sigma_minus;
use tcaibm::rng::stream;
use tcaibm::selection::{bis_select, select_degree, select_greedy_celf, select_reverse};
use tcaibm::TieRule;
use tcaibm_bench::ba_instance;

const RULE: TieRule = TieRule::NegativeDominance;

fn selectors(c: &mut Criterion) {
    let (g, neg) = ba_instance(1500, 100);
    let mut group = c.benchmark_group("select_k50");
    group.sample_size(10);
    group.bench_function("bis", |b| {
        b.iter(|| bis_select(&g, &neg, 50, 3, &RULE, 1000, 50, &mut stream(4, 0)).unwrap())
    });
    group.bench_function("reverse", |b| b.iter(|| select_reverse(&g, &neg, 50, 3, 50, &RULE, &mut stream(5, 0)).unwrap()));
    group.bench_function("degree", |b| b.iter(|| select_degree(&g, &neg, 50).unwrap()));
    group.finish();
}

fn celf(c: &mut Criterion) {
    let (g, neg) = ba_instance(300, 20);
    let mut group = c.benchmark_group("greedy_celf_n300");
    group.sample_size(10);
    group.bench_function("k10_runs200", |b| {
        b.iter(|| select_greedy_celf(&g, &neg, 10, 3, &RULE, 200, &mut stream(6, 0)).unwrap())
    });
    group.finish();
}

fn estimate(c: &mut Criterion) {
    let (g, neg) = ba_instance(1500, 100);
    let pos = select_degree(&g, &neg, 50).unwrap().seeds;
    let mut group = c.benchmark_group("estimate_sigma_minus");
    group.sample_size(10);
    group.bench_function("runs1000", |b| {
        b.iter(|| estimate_sigma_minus(&g, &neg, &pos, 3, &RULE, 1000, &mut stream(7, 0)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, selectors, celf, estimate);
criterion_main!(benches);
