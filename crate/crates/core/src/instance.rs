//! Domain types shared by every technique: the validated instance, queries in
//! raw and rank space, reported answers, and the classic patience-sort LIS.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense color identifier, assigned in order of first appearance.
pub type ColorId = u32;

/// A point `(i, rank(a_i))`. Both coordinates are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub fn new(x: u32, y: u32) -> Self {
        Point { x, y }
    }
}

/// A color label as it appears in an instance file.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColorLabel {
    Int(i64),
    Text(String),
}

impl fmt::Display for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorLabel::Int(v) => write!(f, "{v}"),
            ColorLabel::Text(s) => f.write_str(s),
        }
    }
}

impl From<&str> for ColorLabel {
    fn from(s: &str) -> Self {
        ColorLabel::Text(s.to_string())
    }
}

impl From<i64> for ColorLabel {
    fn from(v: i64) -> Self {
        ColorLabel::Int(v)
    }
}

/// How equal input values are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieMode {
    /// Duplicates are an error.
    #[default]
    Reject,
    /// Equal values are ordered by index, so `(5, 5)` counts as increasing.
    BreakByIndex,
}

/// A set of points that one technique treats as its universe: either all
/// points, or the class of a single color. Points are sorted by `x`.
#[derive(Clone, Copy, Debug)]
pub struct PointClass<'a> {
    pub color: Option<ColorId>,
    pub points: &'a [Point],
}

#[derive(Clone, Debug)]
struct Coloring {
    ids: Vec<ColorId>,
    labels: Vec<ColorLabel>,
    classes: Vec<Vec<Point>>,
}

/// A validated input sequence. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Instance {
    values: Vec<f64>,
    points: Vec<Point>,
    /// Original values ordered by rank; `sorted[r - 1]` has rank `r`.
    sorted: Vec<f64>,
    coloring: Option<Coloring>,
}

/// Validate raw input and build an [`Instance`].
pub fn validate_instance(
    raw_values: Vec<f64>,
    raw_colors: Option<Vec<ColorLabel>>,
    ties: TieMode,
) -> Result<Instance> {
    let n = raw_values.len();
    if n == 0 {
        return Err(Error::InvalidInstance("sequence is empty".into()));
    }
    if n >= u32::MAX as usize {
        return Err(Error::InvalidInstance(format!("sequence too long ({n})")));
    }
    if let Some(pos) = raw_values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInstance(format!(
            "value at index {} is not finite",
            pos + 1
        )));
    }
    if let Some(colors) = &raw_colors {
        if colors.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} colors given for {} values",
                colors.len(),
                n
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw_values[a].total_cmp(&raw_values[b]).then(a.cmp(&b)));
    if ties == TieMode::Reject {
        for w in order.windows(2) {
            if raw_values[w[0]] == raw_values[w[1]] {
                return Err(Error::DuplicateValue {
                    value: raw_values[w[0]],
                    first: w[0] as u32 + 1,
                    second: w[1] as u32 + 1,
                });
            }
        }
    }
    let mut ranks = vec![0u32; n];
    for (r, &pos) in order.iter().enumerate() {
        ranks[pos] = r as u32 + 1;
    }
    let sorted = order.iter().map(|&p| raw_values[p]).collect();
    let points = ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| Point::new(i as u32 + 1, r))
        .collect();

    let coloring = raw_colors.map(|labels_in| {
        let mut lookup: HashMap<ColorLabel, ColorId> = HashMap::new();
        let mut labels = Vec::new();
        let mut ids = Vec::with_capacity(n);
        for label in labels_in {
            let next = labels.len() as ColorId;
            let id = *lookup.entry(label.clone()).or_insert_with(|| {
                labels.push(label);
                next
            });
            ids.push(id);
        }
        let mut classes = vec![Vec::new(); labels.len()];
        for (i, &c) in ids.iter().enumerate() {
            classes[c as usize].push(Point::new(i as u32 + 1, ranks[i]));
        }
        Coloring {
            ids,
            labels,
            classes,
        }
    });

    Ok(Instance {
        values: raw_values,
        points,
        sorted,
        coloring,
    })
}

impl Instance {
    /// Uncolored instance with duplicates rejected.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        validate_instance(values, None, TieMode::Reject)
    }

    pub fn with_colors(values: Vec<f64>, colors: Vec<ColorLabel>) -> Result<Self> {
        validate_instance(values, Some(colors), TieMode::Reject)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value of the 1-based position `i`.
    pub fn value(&self, i: u32) -> f64 {
        self.values[i as usize - 1]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Point of the 1-based position `i`.
    pub fn point(&self, i: u32) -> Point {
        self.points[i as usize - 1]
    }

    pub fn rank(&self, i: u32) -> u32 {
        self.points[i as usize - 1].y
    }

    pub fn is_colored(&self) -> bool {
        self.coloring.is_some()
    }

    pub fn color_of(&self, i: u32) -> Option<ColorId> {
        self.coloring.as_ref().map(|c| c.ids[i as usize - 1])
    }

    pub fn color_count(&self) -> usize {
        self.coloring.as_ref().map_or(0, |c| c.labels.len())
    }

    pub fn color_label(&self, c: ColorId) -> Option<&ColorLabel> {
        self.coloring.as_ref().and_then(|col| col.labels.get(c as usize))
    }

    pub fn color_id(&self, label: &ColorLabel) -> Option<ColorId> {
        self.coloring
            .as_ref()
            .and_then(|col| col.labels.iter().position(|l| l == label))
            .map(|p| p as ColorId)
    }

    /// Points of color `c`, sorted by index.
    pub fn color_class(&self, c: ColorId) -> &[Point] {
        match &self.coloring {
            Some(col) => &col.classes[c as usize],
            None => &[],
        }
    }

    /// All points as a single uncolored class.
    pub fn all_points(&self) -> PointClass<'_> {
        PointClass {
            color: None,
            points: &self.points,
        }
    }

    pub fn class(&self, c: ColorId) -> PointClass<'_> {
        PointClass {
            color: Some(c),
            points: self.color_class(c),
        }
    }

    /// Map a query to rank space. `Ok(None)` means the value interval holds no
    /// rank at all.
    pub fn rank_box(&self, q: &Query) -> Result<Option<RankBox>> {
        let n = self.len() as u32;
        let bad = |reason: String| Error::InvalidQuery { id: q.id, reason };
        if q.x1 < 1 || q.x1 > q.x2 || q.x2 > n {
            return Err(bad(format!(
                "index bounds [{}, {}] must satisfy 1 <= x1 <= x2 <= {n}",
                q.x1, q.x2
            )));
        }
        for v in [q.y1, q.y2].into_iter().flatten() {
            if v.is_nan() {
                return Err(bad("value bound is NaN".into()));
            }
        }
        if let (Some(a), Some(b)) = (q.y1, q.y2) {
            if a > b {
                return Err(bad(format!("value bounds y1={a} > y2={b}")));
            }
        }
        // closed bounds: first rank with value >= y1, last rank with value <= y2
        let lo = match q.y1 {
            Some(y1) => self.sorted.partition_point(|&v| v < y1) as u32 + 1,
            None => 1,
        };
        let hi = match q.y2 {
            Some(y2) => self.sorted.partition_point(|&v| v <= y2) as u32,
            None => n,
        };
        if lo > hi {
            return Ok(None);
        }
        Ok(Some(RankBox {
            x1: q.x1,
            x2: q.x2,
            y1: lo,
            y2: hi,
        }))
    }
}

/// A query range over raw values. Missing value bounds are unbounded, so a
/// query with neither `y1` nor `y2` is a 1D index range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Query {
    pub id: usize,
    pub x1: u32,
    pub x2: u32,
    pub y1: Option<f64>,
    pub y2: Option<f64>,
}

impl Query {
    pub fn range(id: usize, x1: u32, x2: u32) -> Self {
        Query {
            id,
            x1,
            x2,
            y1: None,
            y2: None,
        }
    }

    pub fn rect(id: usize, x1: u32, x2: u32, y1: f64, y2: f64) -> Self {
        Query {
            id,
            x1,
            x2,
            y1: Some(y1),
            y2: Some(y2),
        }
    }

    pub fn is_1d(&self) -> bool {
        self.y1.is_none() && self.y2.is_none()
    }
}

/// A query in rank space; all bounds inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RankBox {
    pub x1: u32,
    pub x2: u32,
    pub y1: u32,
    pub y2: u32,
}

impl RankBox {
    pub fn new(x1: u32, x2: u32, y1: u32, y2: u32) -> Self {
        RankBox { x1, x2, y1, y2 }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.x1 <= p.x && p.x <= self.x2 && self.y1 <= p.y && p.y <= self.y2
    }
}

/// A reported increasing subsequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LisAnswer {
    pub length: usize,
    /// 1-based positions, strictly increasing.
    pub indices: Vec<u32>,
    pub color: Option<ColorId>,
}

impl LisAnswer {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices(indices: Vec<u32>, color: Option<ColorId>) -> Self {
        LisAnswer {
            length: indices.len(),
            indices,
            color,
        }
    }

    /// Check the answer is a valid increasing subsequence inside `rb`, all of
    /// `self.color` when that is set.
    /// `rb == None` means the query region is empty.
    pub fn check(&self, instance: &Instance, rb: Option<&RankBox>) -> std::result::Result<(), String> {
        if self.length != self.indices.len() {
            return Err(format!(
                "length {} but {} indices",
                self.length,
                self.indices.len()
            ));
        }
        if self.indices.is_empty() {
            return Ok(());
        }
        let rb = rb.ok_or_else(|| "non-empty answer for an empty region".to_string())?;
        let n = instance.len() as u32;
        for &i in &self.indices {
            if i < 1 || i > n {
                return Err(format!("index {i} out of range"));
            }
            let p = instance.point(i);
            if !rb.contains(p) {
                return Err(format!("index {i} lies outside the query"));
            }
            if self.color.is_some() && instance.color_of(i) != self.color {
                return Err(format!("index {i} has a different color"));
            }
        }
        for w in self.indices.windows(2) {
            if w[0] >= w[1] {
                return Err(format!("indices {} and {} not increasing", w[0], w[1]));
            }
            if instance.rank(w[0]) >= instance.rank(w[1]) {
                return Err(format!("values at {} and {} not increasing", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Longest strictly increasing subsequence of values `ys` taken in order, by
/// patience sorting. Returns positions into `ys`.
///
/// Among several optima it returns the one whose last element is reached
/// first, each element linked to the pile top that was current when it was
/// placed.
pub fn patience<T: Ord + Copy>(ys: impl IntoIterator<Item = T>) -> Vec<usize> {
    let mut tops: Vec<(T, usize)> = Vec::new();
    let mut pred: Vec<usize> = Vec::new();
    let mut best_end = usize::MAX;
    for (i, y) in ys.into_iter().enumerate() {
        let pile = tops.partition_point(|&(t, _)| t < y);
        pred.push(if pile == 0 { usize::MAX } else { tops[pile - 1].1 });
        if pile == tops.len() {
            tops.push((y, i));
            best_end = i;
        } else {
            tops[pile] = (y, i);
        }
    }
    let mut out = Vec::with_capacity(tops.len());
    let mut cur = best_end;
    while cur != usize::MAX {
        out.push(cur);
        cur = pred[cur];
    }
    out.reverse();
    out
}

/// The O(n log n) baseline: points sorted by `x` with distinct `y`.
pub fn classic_lis(points: &[Point]) -> LisAnswer {
    let picks = patience(points.iter().map(|p| p.y));
    LisAnswer::from_indices(picks.into_iter().map(|k| points[k].x).collect(), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: [f64; 10] = [3., 5., 7., 8., 10., 2., 4., 1., 6., 9.];

    #[test]
    fn fig1_point_mapping() {
        let inst = Instance::new(FIG1.to_vec()).unwrap();
        assert_eq!(inst.len(), 10);
        assert_eq!(inst.point(3).x, 3);
        assert_eq!(inst.value(3), 7.0);
        let mut ranks: Vec<u32> = inst.points().iter().map(|p| p.y).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn singleton() {
        let inst = Instance::new(vec![42.0]).unwrap();
        assert_eq!(inst.points(), &[Point::new(1, 1)]);
        assert_eq!(inst.value(1), 42.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Instance::new(vec![]), Err(Error::InvalidInstance(_))));
        assert!(matches!(
            Instance::with_colors(vec![1., 2.], vec!["a".into()]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            Instance::new(vec![1., f64::NAN]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            Instance::new(vec![5., 5., 3.]),
            Err(Error::DuplicateValue { first: 1, second: 2, .. })
        ));
    }

    #[test]
    fn tie_repair_orders_by_index() {
        let inst = validate_instance(vec![5., 5., 3.], None, TieMode::BreakByIndex).unwrap();
        let ranks: Vec<u32> = inst.points().iter().map(|p| p.y).collect();
        assert_eq!(ranks, vec![2, 3, 1]);
        assert_eq!(classic_lis(inst.points()).length, 2);
    }

    #[test]
    fn classic_lis_examples() {
        let inst = Instance::new(FIG1.to_vec()).unwrap();
        let ans = classic_lis(inst.points());
        assert_eq!(ans.length, 5);
        assert_eq!(ans.indices, vec![1, 2, 3, 4, 5]);

        let dec = Instance::new(vec![9., 7., 5.]).unwrap();
        assert_eq!(classic_lis(dec.points()).length, 1);
        assert_eq!(classic_lis(&[]).length, 0);
    }

    #[test]
    fn rank_box_mapping() {
        let inst = Instance::new(FIG1.to_vec()).unwrap();
        let rb = inst.rank_box(&Query::rect(0, 2, 4, 4.5, 8.0)).unwrap().unwrap();
        // values >= 4.5 start at 5 (rank 5); values <= 8 end at 8 (rank 8)
        assert_eq!(rb, RankBox::new(2, 4, 5, 8));
        assert_eq!(inst.rank_box(&Query::rect(0, 1, 10, 8.2, 8.9)).unwrap(), None);
        assert!(inst.rank_box(&Query::range(0, 0, 3)).is_err());
        assert!(inst.rank_box(&Query::range(0, 4, 3)).is_err());
        assert!(inst.rank_box(&Query::range(0, 1, 11)).is_err());
        assert!(inst.rank_box(&Query::rect(0, 1, 3, 5.0, 4.0)).is_err());
    }

    #[test]
    fn colors_are_dense() {
        let inst = Instance::with_colors(
            vec![1., 2., 3.],
            vec!["b".into(), ColorLabel::Int(7), "b".into()],
        )
        .unwrap();
        assert_eq!(inst.color_count(), 2);
        assert_eq!(inst.color_of(3), Some(0));
        assert_eq!(inst.color_class(0), &[Point::new(1, 1), Point::new(3, 3)]);
        assert_eq!(inst.color_label(1), Some(&ColorLabel::Int(7)));
    }

    #[test]
    fn check_catches_invalid_answers() {
        let inst = Instance::new(FIG1.to_vec()).unwrap();
        let full = inst.rank_box(&Query::range(0, 1, 10)).unwrap();
        let ok = LisAnswer::from_indices(vec![1, 2, 3], None);
        assert!(ok.check(&inst, full.as_ref()).is_ok());
        let not_inc = LisAnswer::from_indices(vec![1, 6], None);
        assert!(not_inc.check(&inst, full.as_ref()).is_err());
        let outside = LisAnswer::from_indices(vec![1, 2], None);
        let rb = RankBox::new(2, 10, 1, 10);
        assert!(outside.check(&inst, Some(&rb)).is_err());
        let bad_len = LisAnswer {
            length: 3,
            indices: vec![1],
            color: None,
        };
        assert!(bad_len.check(&inst, full.as_ref()).is_err());
    }
}
