mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use range_lis::large_lis::{compute_restricted_weights, sample_stitching_set, sampling_probability, Quadrant};
use range_lis::light_colors::{LightColorIndex, LightMode};
use range_lis::oracle::{oracle_box, oracle_colored_box};
use range_lis::solver::solve;
use range_lis::{ColorId, Instance, Problem, Query, RankBox, SolverConfig};

fn perm() -> impl Strategy<Value = Vec<f64>> {
    (1usize..60).prop_flat_map(|n| Just((1..=n).map(|i| i as f64).collect::<Vec<_>>()).prop_shuffle())
}

fn colored(max_n: usize, max_k: i64) -> impl Strategy<Value = Instance> {
    (1..max_n).prop_flat_map(move |n| {
        (
            Just((1..=n).map(|i| i as f64).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(0..max_k, n),
        )
            .prop_map(|(v, c)| Instance::with_colors(v, c.into_iter().map(Into::into).collect()).unwrap())
    })
}

fn lengths(inst: &Instance, qs: &[Query], problem: Problem, cfg: &SolverConfig) -> Vec<usize> {
    solve(inst, qs, problem, cfg).unwrap().results.iter().map(|s| s.answer.length).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn restricted_weights_match_oracle(vals in perm(), pick in any::<prop::sample::Index>()) {
        let inst = Instance::new(vals).unwrap();
        let pivot = inst.points()[pick.index(inst.len())];
        for r in compute_restricted_weights(inst.points(), pivot, Quadrant::NorthEast) {
            let rb = RankBox::new(pivot.x, r.point.x, pivot.y, r.point.y);
            prop_assert_eq!(r.weight as usize, oracle_box(&inst, Some(&rb)).length);
        }
        for r in compute_restricted_weights(inst.points(), pivot, Quadrant::SouthWest) {
            let rb = RankBox::new(r.point.x, pivot.x, r.point.y, pivot.y);
            prop_assert_eq!(r.weight as usize, oracle_box(&inst, Some(&rb)).length);
        }
    }

    #[test]
    fn light_rect_weights_and_size(inst in colored(80, 6)) {
        let colors: Vec<ColorId> = (0..inst.color_count() as ColorId).collect();
        let delta = colors.iter().map(|&c| inst.color_class(c).len()).max().unwrap();
        let idx = LightColorIndex::build(&inst, &colors, delta, LightMode::Rectangle).unwrap();
        prop_assert!(idx.rects().len() <= delta * inst.len());
        for r in idx.rects() {
            let rb = RankBox::new(r.lo.x, r.hi.x, r.lo.y, r.hi.y);
            let o = oracle_colored_box(&inst, Some(&rb));
            let best = o.per_color.iter().find(|(c, _)| *c == r.color).map(|p| p.1);
            prop_assert_eq!(Some(r.weight as usize), best);
        }
    }

    #[test]
    fn light_modes_agree_on_ranges(inst in colored(80, 6), seed in any::<u64>()) {
        let colors: Vec<ColorId> = (0..inst.color_count() as ColorId).collect();
        let delta = colors.iter().map(|&c| inst.color_class(c).len()).max().unwrap();
        let iv = LightColorIndex::build(&inst, &colors, delta, LightMode::Interval).unwrap();
        let rc = LightColorIndex::build(&inst, &colors, delta, LightMode::Rectangle).unwrap();
        let qs = queries(&mut rng(seed), inst.len(), 16, 0.0);
        for q in &qs {
            let rb = inst.rank_box(q).unwrap().unwrap();
            prop_assert_eq!(iv.query(&rb).unwrap().length, rc.query(&rb).unwrap().length);
        }
    }

    #[test]
    fn colored_defaults_exact_when_small(inst in colored(128, 8), seed in any::<u64>()) {
        let n = inst.len();
        for (problem, two_d) in [(Problem::Colored1d, 0.0), (Problem::Colored2d, 0.5)] {
            let qs = queries(&mut rng(seed), n, 16, two_d);
            let got = lengths(&inst, &qs, problem, &SolverConfig { seed, ..SolverConfig::default() });
            for (q, g) in qs.iter().zip(got) {
                let rb = inst.rank_box(q).unwrap();
                prop_assert_eq!(g, oracle_colored_box(&inst, rb.as_ref()).answer.length);
            }
        }
    }
}

/// Misses among queries with optimum at least `tau`, stitching only, over
/// `seeds` samples.
fn coverage_misses(c: f64, seeds: u64) -> (usize, usize) {
    let (n, tau) = (512, 22);
    let mut r = rng(77);
    let inst = Instance::new(values(&mut r, n, true)).unwrap();
    let qs = queries(&mut r, n, 64, 0.5);
    let want: Vec<usize> = qs.iter().map(|q| oracle_box(&inst, inst.rank_box(q).unwrap().as_ref()).length).collect();
    let (mut long, mut missed) = (0, 0);
    for seed in 0..seeds {
        let cfg = SolverConfig {
            tau: Some(tau),
            c,
            seed,
            techniques: "large".parse().unwrap(),
            ..SolverConfig::default()
        };
        for (g, &w) in lengths(&inst, &qs, Problem::Range2d, &cfg).into_iter().zip(&want) {
            if w >= tau {
                long += 1;
                missed += (g != w) as usize;
            }
        }
    }
    (long, missed)
}

#[test]
fn coverage_at_default_constant() {
    let (long, missed) = coverage_misses(32.0, 200);
    assert!(long > 0);
    assert_eq!(missed, 0);
}

#[test]
fn coverage_with_sparse_sample() {
    assert!(sampling_probability(512, 22, 1.0) < 0.3);
    let (long, missed) = coverage_misses(1.0, 100);
    assert!(long > 1000);
    assert!((missed as f64) <= 0.01 * long as f64, "{missed} of {long}");
}

#[test]
fn sample_size_matches_probability() {
    let inst = Instance::new((1..=1000).map(f64::from).collect()).unwrap();
    let p = sampling_probability(1000, 1000, 32.0);
    let (mean, sd) = (1000.0 * p, (1000.0 * p * (1.0 - p)).sqrt());
    let sizes: Vec<f64> = (0..100)
        .map(|s| sample_stitching_set(&[inst.all_points()], 1000, 1000, 32.0, s).len() as f64)
        .collect();
    let avg = sizes.iter().sum::<f64>() / sizes.len() as f64;
    assert!((avg - mean).abs() <= 3.0 * sd / 10.0, "mean {avg}, expected {mean}");
    assert!(sizes.iter().all(|&k| (k - mean).abs() <= 5.0 * sd));
}

#[test]
fn seeded_runs_are_reproducible() {
    let mut r = rng(5);
    let n = 700;
    let inst = Instance::with_colors(values(&mut r, n, true), skewed_colors(&mut r, n, 12)).unwrap();
    let qs = queries(&mut r, n, 80, 0.5);
    for problem in [Problem::Range2d, Problem::Colored2d] {
        let cfg = |seed, workers| SolverConfig { seed, c: 1.0, workers, ..SolverConfig::default() };
        let a = solve(&inst, &qs, problem, &cfg(9, None)).unwrap();
        let b = solve(&inst, &qs, problem, &cfg(9, Some(1))).unwrap();
        let ia: Vec<_> = a.results.iter().map(|s| &s.answer).collect();
        let ib: Vec<_> = b.results.iter().map(|s| &s.answer).collect();
        assert_eq!(ia, ib);
        assert_eq!(a.params, b.params);
    }
}

#[test]
fn combined_dominates_each_technique() {
    for i in 0..20u64 {
        let mut r = rng(600 + i);
        let n = r.gen_range(50..400);
        let inst = Instance::with_colors(values(&mut r, n, i % 2 == 0), skewed_colors(&mut r, n, 10)).unwrap();
        let qs = queries(&mut r, n, 40, 0.5);
        for problem in [Problem::Range2d, Problem::Colored2d] {
            let base = SolverConfig { seed: i, c: 0.5, ..SolverConfig::default() };
            let all = lengths(&inst, &qs, problem, &base);
            let single: &[&str] = if problem == Problem::Range2d { &["small", "large"] } else { &["small", "large", "light"] };
            for t in single {
                let one = lengths(&inst, &qs, problem, &SolverConfig { techniques: t.parse().unwrap(), ..base.clone() });
                assert!(all.iter().zip(&one).all(|(a, o)| a >= o), "{problem} {t}");
            }
        }
    }
}
