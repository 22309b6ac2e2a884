use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::Ratio;
use p5oct_core::covering::build_covering_family;
use p5oct_core::oracle::random_weights;
use p5oct_core::{gen_p5free, mwis_exact, oct_brute, solve_oct, GenKind, GenModel, Graph, SolveOptions, Weights};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn instance(kind: GenKind, n: usize, seed: u64) -> (Graph, Weights) {
    let g = gen_p5free(&GenModel::new(kind, seed, n, Ratio::new(1, 2))).unwrap();
    let w = random_weights(&mut ChaCha8Rng::seed_from_u64(seed), n);
    (g, w)
}

fn bench_mwis(c: &mut Criterion) {
    let mut group = c.benchmark_group("mwis_exact");
    for n in [30, 60, 90] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|_| rng.gen_bool(0.2))
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        let w = random_weights(&mut rng, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(g, w), |b, (g, w)| {
            b.iter(|| mwis_exact(black_box(g), black_box(w)))
        });
    }
    group.finish();
}

fn bench_covering(c: &mut Criterion) {
    let mut group = c.benchmark_group("covering_family");
    group.sample_size(10);
    for n in [10, 14, 18] {
        let (g, w) = instance(GenKind::Substitution, n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(g, w), |b, (g, w)| {
            b.iter(|| build_covering_family(black_box(g), black_box(w)).unwrap())
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (kind, n) in [(GenKind::Substitution, 12), (GenKind::SplitLike, 16), (GenKind::Substitution, 20)] {
        let (g, w) = instance(kind, n, 11);
        group.bench_with_input(BenchmarkId::new(format!("blob/{kind}"), n), &(g.clone(), w.clone()), |b, (g, w)| {
            b.iter(|| solve_oct(black_box(g), black_box(w), &SolveOptions::default()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(format!("brute/{kind}"), n), &(g, w), |b, (g, w)| {
            b.iter(|| oct_brute(black_box(g), black_box(w)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mwis, bench_covering, bench_solve);
criterion_main!(benches);
