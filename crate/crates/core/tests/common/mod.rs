#![allow(dead_code)]

use rand::distributions::{Distribution, WeightedIndex};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use range_lis::{ColorLabel, Instance, Query};

pub const FIG1: [f64; 10] = [3., 5., 7., 8., 10., 2., 4., 1., 6., 9.];

pub fn fig1() -> Instance {
    Instance::new(FIG1.to_vec()).unwrap()
}

/// a c e yellow, b d h orange, f g i j red.
pub fn fig1b() -> Instance {
    let colors = ["yellow", "orange", "yellow", "orange", "yellow", "red", "red", "orange", "red", "red"];
    Instance::with_colors(FIG1.to_vec(), colors.iter().map(|&c| ColorLabel::from(c)).collect()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Permutation of `1..=n`; `near_sorted` keeps it sorted up to `n / 16`
/// random swaps so that long answers are common.
pub fn values(r: &mut impl Rng, n: usize, near_sorted: bool) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    if near_sorted {
        for _ in 0..n / 16 {
            let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
            v.swap(i, j);
        }
    } else {
        v.shuffle(r);
    }
    v
}

/// Colors drawn with weight `1 / (i + 1)`, so a few classes are large.
pub fn skewed_colors(r: &mut impl Rng, n: usize, k: usize) -> Vec<ColorLabel> {
    let w = WeightedIndex::new((0..k).map(|i| 1.0 / (i + 1) as f64)).unwrap();
    (0..n).map(|_| ColorLabel::Int(w.sample(r) as i64)).collect()
}

pub fn uniform_colors(r: &mut impl Rng, n: usize, k: usize) -> Vec<ColorLabel> {
    (0..n).map(|_| ColorLabel::Int(r.gen_range(0..k) as i64)).collect()
}

fn pair(r: &mut impl Rng, n: usize) -> (u32, u32) {
    let (a, b) = (r.gen_range(1..=n as u32), r.gen_range(1..=n as u32));
    (a.min(b), a.max(b))
}

/// `m` queries over a permutation of `1..=n`; `two_d` is the chance of value
/// bounds. Value bounds are half-integers half the time.
pub fn queries(r: &mut impl Rng, n: usize, m: usize, two_d: f64) -> Vec<Query> {
    (0..m)
        .map(|id| {
            let (x1, x2) = pair(r, n);
            if r.gen_bool(two_d) {
                let (a, b) = pair(r, n);
                let shift = if r.gen_bool(0.5) { 0.5 } else { 0.0 };
                Query::rect(id, x1, x2, a as f64 - shift, b as f64 + shift)
            } else {
                Query::range(id, x1, x2)
            }
        })
        .collect()
}
