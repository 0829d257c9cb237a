//! Static 3D range tree: box in (x, y), strict threshold in z.
//!
//! Two nested segment trees over the x- and y-sorted point orders; the inner
//! nodes keep their points sorted by z with prefix and suffix bests, so a
//! query costs O(log^3 n) and the structure O(n log^2 n) space.

use super::Best;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedPoint3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub weight: i64,
    pub payload: u32,
}

/// Whether a query reports the largest or the smallest weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aggregate {
    Max,
    Min,
}

/// Strict z filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZFilter {
    Above(i64),
    Below(i64),
}

#[derive(Clone, Debug, Default)]
struct ZList {
    zs: Vec<i64>,
    /// `prefix[k]` = best of the first `k + 1` entries in z order.
    prefix: Vec<u64>,
    /// `suffix[k]` = best of entries `k..`.
    suffix: Vec<u64>,
}

impl ZList {
    fn new(mut items: Vec<(i64, u64)>) -> Self {
        items.sort_unstable_by_key(|&(z, _)| z);
        let zs = items.iter().map(|&(z, _)| z).collect();
        let mut prefix = Vec::with_capacity(items.len());
        let mut acc = 0;
        for &(_, k) in &items {
            acc = acc.max(k);
            prefix.push(acc);
        }
        let mut suffix = vec![0; items.len()];
        acc = 0;
        for (i, &(_, k)) in items.iter().enumerate().rev() {
            acc = acc.max(k);
            suffix[i] = acc;
        }
        ZList { zs, prefix, suffix }
    }

    fn query(&self, f: ZFilter) -> u64 {
        match f {
            ZFilter::Above(b) => {
                let s = self.zs.partition_point(|&z| z <= b);
                self.suffix.get(s).copied().unwrap_or(0)
            }
            ZFilter::Below(b) => {
                let s = self.zs.partition_point(|&z| z < b);
                if s == 0 {
                    0
                } else {
                    self.prefix[s - 1]
                }
            }
        }
    }
}

/// Segment tree over a sorted coordinate order, generic in the node payload.
#[derive(Clone, Debug)]
struct SegTree<N> {
    coords: Vec<i64>,
    nodes: Vec<N>,
}

impl<N: Default> SegTree<N> {
    /// `items` sorted by coordinate; `make` builds a node from a contiguous run.
    fn build<T: Clone>(
        items: &[T],
        coord: impl Fn(&T) -> i64,
        make: &impl Fn(&[T]) -> N,
    ) -> Self {
        let coords: Vec<i64> = items.iter().map(&coord).collect();
        let size = (4 * items.len()).max(1);
        let mut nodes: Vec<N> = (0..size).map(|_| N::default()).collect();
        fn rec<T, N>(nodes: &mut [N], id: usize, items: &[T], lo: usize, hi: usize, make: &impl Fn(&[T]) -> N) {
            nodes[id] = make(&items[lo..hi]);
            if hi - lo > 1 {
                let mid = (lo + hi) / 2;
                rec(nodes, 2 * id, items, lo, mid, make);
                rec(nodes, 2 * id + 1, items, mid, hi, make);
            }
        }
        if !items.is_empty() {
            rec(&mut nodes, 1, items, 0, items.len(), make);
        }
        SegTree { coords, nodes }
    }

    /// Visit the canonical nodes covering coordinates in `[lo, hi]`.
    fn cover(&self, lo: i64, hi: i64, visit: &mut impl FnMut(&N)) {
        let l = self.coords.partition_point(|&c| c < lo);
        let r = self.coords.partition_point(|&c| c <= hi);
        if l >= r {
            return;
        }
        fn rec<N>(t: &[N], id: usize, lo: usize, hi: usize, l: usize, r: usize, visit: &mut impl FnMut(&N)) {
            if r <= lo || hi <= l {
                return;
            }
            if l <= lo && hi <= r {
                visit(&t[id]);
                return;
            }
            let mid = (lo + hi) / 2;
            rec(t, 2 * id, lo, mid, l, r, visit);
            rec(t, 2 * id + 1, mid, hi, l, r, visit);
        }
        rec(&self.nodes, 1, 0, self.coords.len(), l, r, visit);
    }
}

impl<N> Default for SegTree<N> {
    fn default() -> Self {
        SegTree {
            coords: Vec::new(),
            nodes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tree3 {
    aggregate: Aggregate,
    outer: SegTree<SegTree<ZList>>,
}

impl Tree3 {
    pub fn build(points: &[WeightedPoint3], aggregate: Aggregate) -> Self {
        let key = |p: &WeightedPoint3| {
            let w = match aggregate {
                Aggregate::Max => p.weight,
                Aggregate::Min => -p.weight,
            };
            Best::new(w, p.payload).pack()
        };
        let mut by_x = points.to_vec();
        by_x.sort_by_key(|p| (p.x, p.y, p.z, p.payload));
        let make_inner = |run: &[WeightedPoint3]| {
            let mut by_y = run.to_vec();
            by_y.sort_by_key(|p| (p.y, p.z, p.payload));
            SegTree::build(&by_y, |p| p.y, &|r: &[WeightedPoint3]| {
                ZList::new(r.iter().map(|p| (p.z, key(p))).collect())
            })
        };
        Tree3 {
            aggregate,
            outer: SegTree::build(&by_x, |p| p.x, &make_inner),
        }
    }

    /// Best weight (max or min per the build aggregate) among points with
    /// `x` in `[xlo, xhi]`, `y` in `[ylo, yhi]`, and `z` passing the filter.
    pub fn query(&self, xlo: i64, xhi: i64, ylo: i64, yhi: i64, z: ZFilter) -> Option<Best> {
        let mut acc = 0u64;
        self.outer.cover(xlo, xhi, &mut |inner| {
            inner.cover(ylo, yhi, &mut |zl| acc = acc.max(zl.query(z)));
        });
        Best::unpack(acc).map(|b| match self.aggregate {
            Aggregate::Max => b,
            Aggregate::Min => Best::new(-b.weight, b.payload),
        })
    }
}
