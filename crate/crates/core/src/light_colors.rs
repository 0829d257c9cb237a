//! Exact answers for colors with few points.
//!
//! For a color class `P_c` and two of its points `p_i`, `p_j` with `p_j`
//! north-east of `p_i`, the rectangle spanned by them carries the weight of
//! the longest run of `P_c` from `p_i` to `p_j`. The best monochromatic answer
//! inside a query is then the heaviest rectangle the query contains, over all
//! colors at once. A class of size `s` yields at most `s^2` rectangles.

use crate::error::{Error, Result};
use crate::geom::{WeightedInterval, WeightedIntervalSet, WeightedRect, WeightedRectSet};
use crate::instance::{ColorId, Instance, LisAnswer, Point, RankBox};
use crate::large_lis::{compute_restricted_weights, Quadrant};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LightMode {
    /// Whole-value-range queries only; rectangles projected onto x.
    Interval,
    Rectangle,
}

/// One stored pair `(i, j)` of a light color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorRect {
    pub color: ColorId,
    pub lo: Point,
    pub hi: Point,
    pub weight: u32,
    /// Pair `(i, j')` whose run this one extends; `u32::MAX` for `(i, i)`.
    pub pred: u32,
}

#[derive(Clone, Debug)]
enum Lookup {
    Interval(WeightedIntervalSet),
    Rect(WeightedRectSet),
}

#[derive(Clone, Debug)]
pub struct LightColorIndex {
    mode: LightMode,
    n: u32,
    rects: Vec<ColorRect>,
    lookup: Lookup,
}

impl LightColorIndex {
    /// Index every pair of every color in `colors`; each must have at most
    /// `delta` points.
    pub fn build(instance: &Instance, colors: &[ColorId], delta: usize, mode: LightMode) -> Result<Self> {
        for &c in colors {
            let size = instance.color_class(c).len();
            if size > delta {
                return Err(Error::ContractViolation(format!(
                    "color {} has {size} points, above delta = {delta}",
                    instance.color_label(c).map_or_else(|| c.to_string(), |l| l.to_string())
                )));
            }
        }
        let per_color = par::map(colors, |&c| {
            let class = instance.color_class(c);
            let mut out = Vec::new();
            for &anchor in class {
                let base = out.len() as u32;
                for r in compute_restricted_weights(class, anchor, Quadrant::NorthEast) {
                    out.push(ColorRect {
                        color: c,
                        lo: anchor,
                        hi: r.point,
                        weight: r.weight,
                        pred: if r.link == u32::MAX { u32::MAX } else { base + r.link },
                    });
                }
            }
            out
        });
        let mut rects = Vec::with_capacity(per_color.iter().map(Vec::len).sum());
        for mut chunk in per_color {
            let off = rects.len() as u32;
            for r in &mut chunk {
                if r.pred != u32::MAX {
                    r.pred += off;
                }
            }
            rects.append(&mut chunk);
        }
        let lookup = match mode {
            LightMode::Interval => Lookup::Interval(WeightedIntervalSet::build(
                rects
                    .iter()
                    .enumerate()
                    .map(|(i, r)| WeightedInterval {
                        lo: r.lo.x as i64,
                        hi: r.hi.x as i64,
                        weight: r.weight as i64,
                        payload: i as u32,
                    })
                    .collect(),
            )),
            LightMode::Rectangle => Lookup::Rect(WeightedRectSet::build(
                rects
                    .iter()
                    .enumerate()
                    .map(|(i, r)| WeightedRect {
                        xlo: r.lo.x as i64,
                        xhi: r.hi.x as i64,
                        ylo: r.lo.y as i64,
                        yhi: r.hi.y as i64,
                        weight: r.weight as i64,
                        payload: i as u32,
                    })
                    .collect(),
            )),
        };
        Ok(LightColorIndex {
            mode,
            n: instance.len() as u32,
            rects,
            lookup,
        })
    }

    pub fn mode(&self) -> LightMode {
        self.mode
    }

    pub fn rects(&self) -> &[ColorRect] {
        &self.rects
    }

    fn witness(&self, idx: u32) -> LisAnswer {
        let mut xs = Vec::with_capacity(self.rects[idx as usize].weight as usize);
        let mut cur = idx;
        while cur != u32::MAX {
            let r = &self.rects[cur as usize];
            xs.push(r.hi.x);
            cur = r.pred;
        }
        xs.reverse();
        LisAnswer::from_indices(xs, Some(self.rects[idx as usize].color))
    }

    pub fn query(&self, rb: &RankBox) -> Result<LisAnswer> {
        let hit = match &self.lookup {
            Lookup::Interval(set) => {
                if rb.y1 > 1 || rb.y2 < self.n {
                    return Err(Error::ContractViolation(
                        "interval-mode light index cannot answer a query with value bounds".into(),
                    ));
                }
                set.query(rb.x1 as i64, rb.x2 as i64)
            }
            Lookup::Rect(set) => set.query(rb.x1 as i64, rb.x2 as i64, rb.y1 as i64, rb.y2 as i64),
        };
        Ok(hit.map_or_else(LisAnswer::empty, |b| self.witness(b.payload)))
    }

    pub fn query_batch(&self, boxes: &[Option<RankBox>]) -> Result<Vec<LisAnswer>> {
        par::map(boxes, |b| match b {
            Some(rb) => self.query(rb),
            None => Ok(LisAnswer::empty()),
        })
        .into_iter()
        .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{ColorLabel, Query};
    use crate::oracle::oracle_colored_box;

    const FIG1: [f64; 10] = [3., 5., 7., 8., 10., 2., 4., 1., 6., 9.];

    fn fig1b() -> Instance {
        let colors = ["yellow", "orange", "yellow", "orange", "yellow", "red", "red", "orange", "red", "red"];
        Instance::with_colors(FIG1.to_vec(), colors.iter().map(|&c| ColorLabel::from(c)).collect()).unwrap()
    }

    fn all_colors(inst: &Instance) -> Vec<ColorId> {
        (0..inst.color_count() as ColorId).collect()
    }

    #[test]
    fn fig1b_full_range() {
        let inst = fig1b();
        let idx = LightColorIndex::build(&inst, &all_colors(&inst), 4, LightMode::Rectangle).unwrap();
        let full = inst.rank_box(&Query::range(0, 1, 10)).unwrap().unwrap();
        let ans = idx.query(&full).unwrap();
        assert_eq!(ans.length, 4);
        assert_eq!(inst.color_label(ans.color.unwrap()), Some(&"red".into()));
        let vals: Vec<f64> = ans.indices.iter().map(|&i| inst.value(i)).collect();
        assert_eq!(vals, vec![2., 4., 6., 9.]);
        let iv = LightColorIndex::build(&inst, &all_colors(&inst), 4, LightMode::Interval).unwrap();
        assert_eq!(iv.query(&full).unwrap().length, 4);
    }

    #[test]
    fn oversized_color_rejected() {
        let inst = fig1b();
        let err = LightColorIndex::build(&inst, &all_colors(&inst), 3, LightMode::Rectangle).unwrap_err();
        assert!(matches!(err, Error::ContractViolation(_)));
    }

    #[test]
    fn fig7_chain_weight() {
        // color 0: chain (1,1) (3,3) (5,5) (7,7) plus (2,6) and (6,2); color 1 fills the rest
        let vals = vec![1., 6., 3., 4., 5., 2., 7.];
        let colors = [0, 0, 0, 1, 0, 0, 0].map(ColorLabel::Int).to_vec();
        let inst = Instance::with_colors(vals, colors).unwrap();
        let idx = LightColorIndex::build(&inst, &all_colors(&inst), 7, LightMode::Rectangle).unwrap();
        let r = idx
            .rects()
            .iter()
            .find(|r| r.lo == Point::new(1, 1) && r.hi == Point::new(7, 7))
            .unwrap();
        assert_eq!(r.weight, 4);
    }

    #[test]
    fn small_shapes() {
        let inst = Instance::with_colors(vec![1.0], vec![ColorLabel::Int(3)]).unwrap();
        let idx = LightColorIndex::build(&inst, &[0], 1, LightMode::Rectangle).unwrap();
        assert_eq!(idx.rects().len(), 1);
        assert_eq!(idx.rects()[0].weight, 1);

        let inst = Instance::with_colors(vec![1., 2., 5., 6.], [0, 0, 1, 1].map(ColorLabel::Int).to_vec()).unwrap();
        let idx = LightColorIndex::build(&inst, &[0, 1], 2, LightMode::Rectangle).unwrap();
        assert!(idx.rects().len() <= 8);
        // between the two colors' extents
        assert_eq!(idx.query(&RankBox::new(2, 3, 3, 2)).unwrap().length, 0);
        assert_eq!(idx.query(&RankBox::new(2, 3, 1, 4)).unwrap().length, 1);
    }

    #[test]
    fn exact_rectangle_bounds() {
        let inst = fig1b();
        let idx = LightColorIndex::build(&inst, &all_colors(&inst), 4, LightMode::Rectangle).unwrap();
        for r in idx.rects() {
            let rb = RankBox::new(r.lo.x, r.hi.x, r.lo.y, r.hi.y);
            let want = oracle_colored_box(&inst, Some(&rb)).answer.length;
            assert!(idx.query(&rb).unwrap().length >= r.weight as usize);
            assert_eq!(idx.query(&rb).unwrap().length, want);
        }
    }

    #[test]
    fn interval_mode_rejects_value_bounds() {
        let inst = fig1b();
        let idx = LightColorIndex::build(&inst, &all_colors(&inst), 4, LightMode::Interval).unwrap();
        assert!(idx.query(&RankBox::new(1, 10, 2, 10)).is_err());
    }
}
