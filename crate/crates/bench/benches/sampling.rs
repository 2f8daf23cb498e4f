use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tcaibm::diffusion::simulate_competitive;
use tcaibm::rng::stream;
use tcaibm::sampling::{fis, prune_rr, ReverseSampler};
use tcaibm::{NodeId, TieRule};
use tcaibm_bench::ba_instance;

fn diffusion(c: &mut Criterion) {
    let (g, neg) = ba_instance(1500, 100);
    let pos: Vec<NodeId> = g.nodes().filter(|u| !neg.contains(u)).take(20).collect();
    let mut rng = stream(1, 0);
    let mut group = c.benchmark_group("simulate_competitive");
    for tau in [1, 3, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(tau), &tau, |b, &tau| {
            b.iter(|| simulate_competitive(&g, &neg, &pos, tau, &TieRule::NegativeDominance, &mut rng).unwrap())
        });
    }
    group.finish();
}

fn forward(c: &mut Criterion) {
    let (g, neg) = ba_instance(1500, 100);
    let mut rng = stream(2, 0);
    c.bench_function("fis/phi=200", |b| b.iter(|| fis(&g, &neg, 200, 3, &mut rng).unwrap()));
}

fn reverse(c: &mut Criterion) {
    let (g, neg) = ba_instance(1500, 100);
    let mut sorted = neg.clone();
    sorted.sort_unstable();
    let mut sampler = ReverseSampler::new(&g, &sorted).unwrap();
    let heads: Vec<NodeId> = g.nodes().filter(|u| !neg.contains(u)).collect();
    let mut rng = stream(3, 0);
    let mut coins = tcaibm::diffusion::RngCoins(&mut rng);
    let mut i = 0;
    c.bench_function("ris+prune/tau=3", |b| {
        b.iter(|| {
            i = (i + 1) % heads.len();
            sampler
                .sample(heads[i], 3, &mut coins)
                .unwrap()
                .map(|raw| prune_rr(&raw, &TieRule::NegativeDominance).unwrap())
        })
    });
}

criterion_group!(benches, diffusion, forward, reverse);
criterion_main!(benches);
