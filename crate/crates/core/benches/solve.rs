use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use range_lis::cli::format::Loaded;
use range_lis::cli::{generate, GenParams};
use range_lis::cli::{Distribution, QueryKind};
use range_lis::solver::solve;
use range_lis::{Problem, SolverConfig, TieMode};

fn instance(n: usize, colors: Option<usize>, kind: QueryKind) -> Loaded {
    generate(&GenParams {
        n,
        m: n,
        kind,
        colors,
        distribution: Distribution::Uniform,
        seed: 1,
    })
    .unwrap()
    .into_loaded(TieMode::Reject)
    .unwrap()
}

fn bench_workers(c: &mut Criterion) {
    let cases = [
        (Problem::Range2d, instance(4096, None, QueryKind::TwoD)),
        (Problem::Colored1d, instance(4096, Some(64), QueryKind::OneD)),
        (Problem::Colored2d, instance(4096, Some(64), QueryKind::TwoD)),
    ];
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (problem, loaded) in &cases {
        for (label, workers) in [("sequential", Some(1)), ("parallel", None)] {
            let config = SolverConfig {
                workers,
                ..SolverConfig::default()
            };
            group.bench_with_input(BenchmarkId::new(problem.to_string(), label), loaded, |b, l| {
                b.iter(|| solve(black_box(&l.instance), &l.queries, *problem, &config).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_workers);
criterion_main!(benches);
