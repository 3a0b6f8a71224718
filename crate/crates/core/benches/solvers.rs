use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dissolution::generators::{generate_biased_hardness, generate_random, AlphaMode, GraphMode, RandomSpec, XCInstance};
use dissolution::oracle::brute_force_biased_with;
use dissolution::solvers::{solve_clique, solve_exact};
use dissolution::{ExactOptions, Graph, Instance};

fn random(n: usize, s: u64, delta_s: u64, seed: u64) -> Instance {
    generate_random(&RandomSpec {
        graph: GraphMode::Gnp { n, p: 0.4 },
        s,
        delta_s,
        alpha: AlphaMode::Uniform,
        r_alpha: None,
        seed,
    })
    .unwrap()
}

// 0 is the global rayon pool; with the `parallel` feature off both run sequentially
const THREADS: [usize; 2] = [1, 0];

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    let xc = XCInstance::new(6, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 4, 5]]).unwrap();
    let hard = generate_biased_hardness(&xc).unwrap().instance;
    let gnp = random(14, 2, 2, 7);
    for (name, inst) in [("xc_biased_n16", &hard), ("gnp_n14", &gnp)] {
        for threads in THREADS {
            let opts = ExactOptions {
                threads,
                ..ExactOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(name, threads), inst, |b, inst| {
                b.iter(|| solve_exact(black_box(inst), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_biased");
    group.sample_size(10);
    let inst = random(9, 1, 2, 3);
    for threads in THREADS {
        group.bench_with_input(BenchmarkId::new("gnp_n9", threads), &inst, |b, inst| {
            b.iter(|| brute_force_biased_with(black_box(inst), threads).unwrap())
        });
    }
    group.finish();
}

fn clique(c: &mut Criterion) {
    let n = 5000;
    let alpha = (0..n as u64).map(|v| v % 4).collect();
    let inst = Instance::new(Graph::complete(n), 3, 2).unwrap().with_alpha(alpha).unwrap();
    c.bench_function("clique_n5000", |b| b.iter(|| solve_clique(black_box(&inst)).unwrap()));
}

criterion_group!(benches, exact, oracle, clique);
criterion_main!(benches);
