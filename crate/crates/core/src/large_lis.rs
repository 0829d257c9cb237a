//! Queries whose LIS is long, answered through sampled stitching elements.
//!
//! If a point `p` lies on some LIS of the query, the LIS splits at `p` into
//! the LIS of the query's part north-east of `p` and of its part south-west
//! of `p`, sharing `p`. A long LIS contains many points, so a random sample
//! with rate `c ln n / tau` hits one of them with high probability.
//!
//! For every sampled pivot we compute, over the pivot's own point class, the
//! restricted LIS weight of each NE point `p_j` (longest run from the pivot
//! to `p_j`) and of each SW point. A weight `w(p_j)` stands for the rectangle
//! spanned by the pivot and `p_j`; when the pivot lies in the query, that
//! rectangle is inside the query iff `p_j` is, so the containment maximum is
//! a dominance maximum anchored at the pivot.

use std::borrow::Cow;

use rand::Rng;

use crate::geom::{dominance_queries, Best, MaxFenwick};
use crate::instance::{ColorId, LisAnswer, Point, PointClass, RankBox};
use crate::par;
use crate::rng;

pub const DEFAULT_C: f64 = 32.0;

/// `min(1, c ln n / tau)`, with `ln n` floored at 1 so tiny instances still
/// sample.
pub fn sampling_probability(n: usize, tau: usize, c: f64) -> f64 {
    let log = (n.max(1) as f64).ln().max(1.0);
    (c * log / tau.max(1) as f64).clamp(0.0, 1.0)
}

/// A sampled pivot: class index and position within the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pivot {
    pub class: u32,
    pub pos: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub members: Vec<Pivot>,
    pub probability: f64,
    pub c: f64,
    pub seed: u64,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Include every point of every class independently with
/// `sampling_probability(log_n, tau, c)`.
pub fn sample_stitching_set(
    classes: &[PointClass<'_>],
    log_n: usize,
    tau: usize,
    c: f64,
    seed: u64,
) -> SampleSet {
    let probability = sampling_probability(log_n, tau, c);
    let mut r = rng::stream(seed, "stitching");
    let mut members = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        for pos in 0..class.points.len() {
            let u: f64 = r.gen();
            if u < probability {
                members.push(Pivot {
                    class: ci as u32,
                    pos: pos as u32,
                });
            }
        }
    }
    SampleSet {
        members,
        probability,
        c,
        seed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrant {
    NorthEast,
    SouthWest,
}

const NO_LINK: u32 = u32::MAX;

/// A point of a pivot's quadrant with its restricted LIS weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reach {
    pub point: Point,
    pub weight: u32,
    /// Previous entry on a best run toward the pivot; `NO_LINK` at the pivot.
    pub link: u32,
}

/// Restricted LIS weights over `class` (sorted by x) in one quadrant of
/// `pivot`.
///
/// NE entries come in increasing x, SW entries in decreasing x; the pivot is
/// entry 0 with weight 1 either way.
pub fn compute_restricted_weights(class: &[Point], pivot: Point, quadrant: Quadrant) -> Vec<Reach> {
    compute_restricted_weights_in(class, pivot, quadrant, &RankBox::new(0, u32::MAX, 0, u32::MAX))
}

/// [`compute_restricted_weights`] over the part of the quadrant inside
/// `clip`, which must contain the pivot. A run from the pivot to `p_j` stays
/// in the rectangle they span, so every kept weight is unchanged.
pub fn compute_restricted_weights_in(class: &[Point], pivot: Point, quadrant: Quadrant, clip: &RankBox) -> Vec<Reach> {
    debug_assert!(clip.contains(pivot));
    let quad: Vec<Point> = match quadrant {
        Quadrant::NorthEast => {
            let start = class.partition_point(|p| p.x < pivot.x);
            let end = class.partition_point(|p| p.x <= clip.x2);
            class[start..end]
                .iter()
                .filter(|p| p.y >= pivot.y && p.y <= clip.y2)
                .copied()
                .collect()
        }
        Quadrant::SouthWest => {
            let start = class.partition_point(|p| p.x < clip.x1);
            let end = class.partition_point(|p| p.x <= pivot.x);
            class[start..end]
                .iter()
                .rev()
                .filter(|p| p.y <= pivot.y && p.y >= clip.y1)
                .copied()
                .collect()
        }
    };
    debug_assert_eq!(quad.first(), Some(&pivot));
    // patience pass: length of the best run ending at each entry plus its link
    let mut tops: Vec<(i64, u32)> = Vec::new();
    let mut out = Vec::with_capacity(quad.len());
    for (i, p) in quad.iter().enumerate() {
        let key = match quadrant {
            Quadrant::NorthEast => p.y as i64,
            Quadrant::SouthWest => -(p.y as i64),
        };
        let pile = tops.partition_point(|&(t, _)| t < key);
        let link = if pile == 0 { NO_LINK } else { tops[pile - 1].1 };
        if pile == tops.len() {
            tops.push((key, i as u32));
        } else {
            tops[pile] = (key, i as u32);
        }
        out.push(Reach {
            point: *p,
            weight: pile as u32 + 1,
            link,
        });
    }
    out
}

/// Run from the pivot to `entries[idx]`, in increasing x.
fn chain(entries: &[Reach], idx: usize, quadrant: Quadrant) -> Vec<Point> {
    let mut out = Vec::with_capacity(entries[idx].weight as usize);
    let mut cur = idx as u32;
    while cur != NO_LINK {
        out.push(entries[cur as usize].point);
        cur = entries[cur as usize].link;
    }
    if quadrant == Quadrant::NorthEast {
        out.reverse();
    }
    out
}

/// Both quadrant weight sets of one pivot.
#[derive(Clone, Debug)]
pub struct PivotTables {
    pub pivot: Point,
    pub color: Option<ColorId>,
    pub ne: Vec<Reach>,
    pub sw: Vec<Reach>,
}

/// Winning stitch for one query: the x of the points ending the NE and SW
/// runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StitchHit {
    pub length: u32,
    pub pivot: u32,
    pub ne_x: u32,
    pub sw_x: u32,
}

impl StitchHit {
    fn beats(&self, other: &StitchHit) -> bool {
        self.length > other.length || (self.length == other.length && self.pivot < other.pivot)
    }
}

fn merge_hit(acc: &mut Option<StitchHit>, cand: StitchHit) {
    if acc.is_none_or(|a| cand.beats(&a)) {
        *acc = Some(cand);
    }
}

/// Fenwick coordinates for a set of distinct ys: the offset itself when the
/// span is compact, local ranks otherwise.
struct YAxis {
    min: u32,
    bound: usize,
    sorted: Option<Vec<u32>>,
}

impl YAxis {
    fn new(ys: impl Iterator<Item = u32> + Clone) -> Self {
        let (lo, hi, len) = ys.clone().fold((u32::MAX, 0, 0usize), |(l, h, c), y| (l.min(y), h.max(y), c + 1));
        if len == 0 {
            return YAxis { min: 1, bound: 0, sorted: Some(Vec::new()) };
        }
        let span = (hi - lo) as usize + 1;
        if span <= 4 * len {
            YAxis { min: lo, bound: span, sorted: None }
        } else {
            let mut sorted: Vec<u32> = ys.collect();
            sorted.sort_unstable();
            YAxis { min: lo, bound: len, sorted: Some(sorted) }
        }
    }

    fn coord(&self, y: u32) -> u32 {
        match &self.sorted {
            None => y - self.min + 1,
            Some(s) => s.partition_point(|&v| v < y) as u32 + 1,
        }
    }

    /// Number of coordinates at or below `y`'s position, i.e. the prefix
    /// covering every stored value `<= y`.
    fn prefix_le(&self, y: u32) -> u32 {
        match &self.sorted {
            None if y < self.min => 0,
            None => ((y - self.min) as usize + 1).min(self.bound) as u32,
            Some(s) => s.partition_point(|&v| v <= y) as u32,
        }
    }

    /// Prefix covering every stored value `< y`.
    fn prefix_lt(&self, y: u32) -> u32 {
        if y == 0 {
            0
        } else {
            self.prefix_le(y - 1)
        }
    }
}

impl PivotTables {
    pub fn compute(class: PointClass<'_>, pos: usize) -> Self {
        Self::compute_in(class, pos, &RankBox::new(0, u32::MAX, 0, u32::MAX))
    }

    /// Tables restricted to `clip`; enough for queries inside `clip`.
    pub fn compute_in(class: PointClass<'_>, pos: usize, clip: &RankBox) -> Self {
        let pivot = class.points[pos];
        PivotTables {
            pivot,
            color: class.color,
            ne: compute_restricted_weights_in(class.points, pivot, Quadrant::NorthEast, clip),
            sw: compute_restricted_weights_in(class.points, pivot, Quadrant::SouthWest, clip),
        }
    }

    /// Best NE and SW entries for each query, which must contain the pivot.
    /// Returns `(length, ne index, sw index)`.
    pub fn answer_batch(&self, boxes: &[RankBox]) -> Vec<(u32, u32, u32)> {
        debug_assert!(boxes.iter().all(|b| b.contains(self.pivot)));
        // NE: entries with x <= x2 and y <= y2
        let ax = YAxis::new(self.ne.iter().map(|r| r.point.y));
        let pts: Vec<(u32, u32, Best)> = self
            .ne
            .iter()
            .enumerate()
            .map(|(i, r)| (r.point.x, ax.coord(r.point.y), Best::new(r.weight as i64, i as u32)))
            .collect();
        let qs: Vec<(u32, u32)> = boxes.iter().map(|b| (b.x2, ax.prefix_le(b.y2))).collect();
        let bx = YAxis::new(self.sw.iter().map(|r| r.point.y));
        let mut tree = MaxFenwick::new(ax.bound.max(bx.bound));
        let ne = dominance_queries(&pts, ax.bound, &qs, &mut tree);

        // SW: entries with x >= x1 and y >= y1, reflected
        let m = bx.bound as u32;
        let pts: Vec<(u32, u32, Best)> = self
            .sw
            .iter()
            .enumerate()
            .map(|(i, r)| (u32::MAX - r.point.x, m + 1 - bx.coord(r.point.y), Best::new(r.weight as i64, i as u32)))
            .collect();
        let qs: Vec<(u32, u32)> = boxes
            .iter()
            .map(|b| (u32::MAX - b.x1, m - bx.prefix_lt(b.y1)))
            .collect();
        let sw = dominance_queries(&pts, bx.bound, &qs, &mut tree);

        ne.into_iter()
            .zip(sw)
            .map(|(a, b)| {
                // the pivot itself always qualifies on both sides
                let (a, b) = (a.unwrap(), b.unwrap());
                ((a.weight + b.weight - 1) as u32, a.payload, b.payload)
            })
            .collect()
    }

    /// Witness for a hit on this pivot, in increasing x.
    pub fn witness(&self, ne: u32, sw: u32) -> LisAnswer {
        let mut xs: Vec<u32> = chain(&self.sw, sw as usize, Quadrant::SouthWest)
            .iter()
            .map(|p| p.x)
            .collect();
        xs.extend(
            chain(&self.ne, ne as usize, Quadrant::NorthEast)
                .iter()
                .skip(1)
                .map(|p| p.x),
        );
        LisAnswer::from_indices(xs, self.color)
    }

    /// Witness for the runs ending at x coordinates `ne_x` and `sw_x`.
    pub fn witness_at(&self, ne_x: u32, sw_x: u32) -> LisAnswer {
        let ne = self.ne.partition_point(|r| r.point.x < ne_x);
        let sw = self.sw.partition_point(|r| r.point.x > sw_x);
        debug_assert_eq!(self.ne[ne].point.x, ne_x);
        debug_assert_eq!(self.sw[sw].point.x, sw_x);
        self.witness(ne as u32, sw as u32)
    }
}

/// Best stitch per query over all pivots; `tables(i, clip)` yields pivot
/// `i`'s tables, complete at least inside `clip`.
fn stitch_batch<'t, F>(pivots: &[Point], tables: F, boxes: &[Option<RankBox>]) -> Vec<Option<StitchHit>>
where
    F: Fn(usize, &RankBox) -> Cow<'t, PivotTables> + Sync + Send,
{
    let ids: Vec<usize> = (0..pivots.len()).collect();
    par::fold_reduce(
        &ids,
        || vec![None; boxes.len()],
        |mut acc: Vec<Option<StitchHit>>, &i| {
            let pv = pivots[i];
            let (slots, hits): (Vec<usize>, Vec<RankBox>) = boxes
                .iter()
                .enumerate()
                .filter_map(|(s, b)| b.filter(|b| b.contains(pv)).map(|b| (s, b)))
                .unzip();
            if slots.is_empty() {
                return acc;
            }
            let clip = hits[1..].iter().fold(hits[0], |c, b| RankBox {
                x1: c.x1.min(b.x1),
                x2: c.x2.max(b.x2),
                y1: c.y1.min(b.y1),
                y2: c.y2.max(b.y2),
            });
            let t = tables(i, &clip);
            for (s, (length, ne, sw)) in slots.into_iter().zip(t.answer_batch(&hits)) {
                merge_hit(
                    &mut acc[s],
                    StitchHit {
                        length,
                        pivot: i as u32,
                        ne_x: t.ne[ne as usize].point.x,
                        sw_x: t.sw[sw as usize].point.x,
                    },
                );
            }
            acc
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                if let Some(y) = y {
                    merge_hit(x, y);
                }
            }
            a
        },
    )
}

/// Materialized stitching index: the sample plus every pivot's tables.
#[derive(Clone, Debug)]
pub struct StitchIndex {
    sample: SampleSet,
    tables: Vec<PivotTables>,
}

impl StitchIndex {
    /// Sample pivots over `classes` and build both quadrant sets for each.
    /// A pivot stitches only within its own class.
    pub fn build(classes: &[PointClass<'_>], log_n: usize, tau: usize, c: f64, seed: u64) -> Self {
        let sample = sample_stitching_set(classes, log_n, tau, c, seed);
        let tables = par::map(&sample.members, |pv| {
            PivotTables::compute(classes[pv.class as usize], pv.pos as usize)
        });
        StitchIndex { sample, tables }
    }

    pub fn sample(&self) -> &SampleSet {
        &self.sample
    }

    pub fn tables(&self) -> &[PivotTables] {
        &self.tables
    }

    pub fn query_batch(&self, boxes: &[Option<RankBox>]) -> Vec<LisAnswer> {
        let pivots: Vec<Point> = self.tables.iter().map(|t| t.pivot).collect();
        let hits = stitch_batch(&pivots, |i, _| Cow::Borrowed(&self.tables[i]), boxes);
        hits.into_iter()
            .map(|h| match h {
                None => LisAnswer::empty(),
                Some(h) => self.tables[h.pivot as usize].witness_at(h.ne_x, h.sw_x),
            })
            .collect()
    }

    pub fn query(&self, rb: &RankBox) -> LisAnswer {
        self.query_batch(&[Some(*rb)]).pop().unwrap()
    }
}

/// Same answers as [`StitchIndex::query_batch`] without keeping per-pivot
/// tables alive: each pivot's tables are built, used for the queries that
/// contain it, and dropped; winning pivots are rebuilt for reporting.
pub fn answer_streaming(
    classes: &[PointClass<'_>],
    sample: &SampleSet,
    boxes: &[Option<RankBox>],
) -> Vec<LisAnswer> {
    let pivots: Vec<Point> = sample
        .members
        .iter()
        .map(|pv| classes[pv.class as usize].points[pv.pos as usize])
        .collect();
    let build = |i: usize, clip: &RankBox| {
        let pv = sample.members[i];
        PivotTables::compute_in(classes[pv.class as usize], pv.pos as usize, clip)
    };
    let hits = stitch_batch(&pivots, |i, clip| Cow::Owned(build(i, clip)), boxes);

    let mut winners: Vec<u32> = hits.iter().flatten().map(|h| h.pivot).collect();
    winners.sort_unstable();
    winners.dedup();
    let full = RankBox::new(0, u32::MAX, 0, u32::MAX);
    let rebuilt = par::map(&winners, |&i| build(i as usize, &full));
    hits.into_iter()
        .map(|h| match h {
            None => LisAnswer::empty(),
            Some(h) => {
                let k = winners.binary_search(&h.pivot).unwrap();
                rebuilt[k].witness_at(h.ne_x, h.sw_x)
            }
        })
        .collect()
}
