//! Random instance generation.

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::prelude::*;
use serde_json::{Number, Value};

use super::format::{InstanceFile, QueryRecord};
use crate::error::{Error, Result};
use crate::instance::ColorLabel;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum QueryKind {
    #[value(name = "1d")]
    OneD,
    #[value(name = "2d")]
    TwoD,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Distribution {
    /// Uniform permutation, uniform colors.
    Uniform,
    /// Sorted sequence with n/50 random swaps.
    LongLis,
    /// Uniform permutation; color `i` drawn with weight `1 / (i + 1)`.
    HeavySkew,
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub kind: QueryKind,
    pub colors: Option<usize>,
    pub distribution: Distribution,
    pub seed: u64,
}

fn sorted_pair(r: &mut impl Rng, n: usize) -> (u32, u32) {
    let a = r.gen_range(1..=n as u32);
    let b = r.gen_range(1..=n as u32);
    (a.min(b), a.max(b))
}

pub fn generate(p: &GenParams) -> Result<InstanceFile> {
    if p.n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    if p.colors == Some(0) {
        return Err(Error::Parse("color count must be at least 1".into()));
    }
    let n = p.n;
    let mut vr = rng::stream(p.seed, "gen/values");
    let mut values: Vec<u32> = (1..=n as u32).collect();
    match p.distribution {
        Distribution::LongLis => {
            for _ in 0..n / 50 {
                let i = vr.gen_range(0..n);
                let j = vr.gen_range(0..n);
                values.swap(i, j);
            }
        }
        Distribution::Uniform | Distribution::HeavySkew => values.shuffle(&mut vr),
    }

    let colors = p.colors.map(|k| {
        let mut cr = rng::stream(p.seed, "gen/colors");
        let ids: Vec<usize> = match p.distribution {
            Distribution::HeavySkew => {
                let w = WeightedIndex::new((0..k).map(|i| 1.0 / (i + 1) as f64)).unwrap();
                (0..n).map(|_| w.sample(&mut cr)).collect()
            }
            _ => (0..n).map(|_| cr.gen_range(0..k)).collect(),
        };
        ids.into_iter().map(|c| ColorLabel::Int(c as i64)).collect()
    });

    let mut qr = rng::stream(p.seed, "gen/queries");
    let queries = (0..p.m)
        .map(|id| {
            let (x1, x2) = sorted_pair(&mut qr, n);
            let two_d = match p.kind {
                QueryKind::OneD => false,
                QueryKind::TwoD => true,
                QueryKind::Mixed => qr.gen_bool(0.5),
            };
            let (y1, y2) = if two_d {
                let (a, b) = sorted_pair(&mut qr, n);
                (Some(Number::from(a)), Some(Number::from(b)))
            } else {
                (None, None)
            };
            QueryRecord {
                id: Value::from(id),
                x1,
                x2,
                y1,
                y2,
            }
        })
        .collect();

    Ok(InstanceFile {
        sequence: values.into_iter().map(Number::from).collect(),
        colors,
        queries,
    })
}
