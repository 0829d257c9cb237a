//! Exact answers for queries whose LIS is short.
//!
//! The index range is split recursively at the midpoint `x*`. At every node,
//! left of the split we store for each point `p` and length `alpha <= tau`
//! the lowest peak of an increasing run of length `alpha` starting at `p` and
//! ending at or before `x*`; right of the split the highest base of a run of
//! length `beta` ending at `p` and starting after `x*`. A query straddling
//! `x*` picks the best left run reachable from its range (`L(q, alpha)`) and
//! the best right run (`R(q, beta)`), and the answer is the longest pair with
//! `L(q, alpha) < R(q, beta)`, found by binary search over the non-increasing
//! `R`.
//!
//! Both lookups are 2D dominance maxima. For `R`, a point `p` right of the
//! split qualifies iff `x_p <= x2`, `y_p <= y2` and its base is `>= y1`;
//! since a base never exceeds its own point, the last condition can be
//! checked on the winner alone. `L` is symmetric with a minimum.

use crate::geom::{dominance_queries_in_order, local_ranks, offline_dominance_max_2d, query_order, Best, MaxFenwick};
use crate::instance::{ColorId, LisAnswer, Point, PointClass, RankBox};
use crate::par;

const NO_LINK: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Entry {
    /// Rank value; 0 when the entry is undefined.
    value: u32,
    /// Side index of the next point of the run, or `NO_LINK`.
    link: u32,
}

/// Lowest-peak and highest-base tables of one recursion node.
#[derive(Clone, Debug)]
pub struct DpTables {
    left: Vec<Point>,
    right: Vec<Point>,
    depth_left: usize,
    depth_right: usize,
    /// `peak[(alpha - 1) * left.len() + k]`
    peak: Vec<Entry>,
    /// `base[(beta - 1) * right.len() + k]`
    base: Vec<Entry>,
}

/// Local ranks `1..=len` of `ys`.
/// Run the level recurrence `T(k, l) = best { T(k', l - 1) : k' dominated by k }`
/// in sweep `order`. `key` maps a rank value to its maximization key.
fn run_levels(
    order: &[usize],
    ys_sweep: &[u32],
    level_one: &[u32],
    tau: usize,
    key: impl Fn(u32) -> i64,
) -> (Vec<Entry>, usize) {
    let n = level_one.len();
    let cap = tau.min(n);
    let mut table: Vec<Entry> = level_one
        .iter()
        .map(|&v| Entry {
            value: v,
            link: NO_LINK,
        })
        .collect();
    if n == 0 {
        return (table, 0);
    }
    let mut depth = 1;
    while depth < cap {
        let prev_start = (depth - 1) * n;
        let mut next = vec![Entry::default(); n];
        let mut any = false;
        {
            let prev = &table[prev_start..prev_start + n];
            offline_dominance_max_2d(ys_sweep, n, |j, below| {
                let k = order[j];
                if let Some(b) = below {
                    next[k] = Entry {
                        value: b.weight.unsigned_abs() as u32,
                        link: b.payload,
                    };
                    any = true;
                }
                let e = prev[k];
                (e.value != 0).then(|| Best::new(key(e.value), k as u32))
            });
        }
        if !any {
            break;
        }
        table.extend_from_slice(&next);
        depth += 1;
    }
    (table, depth)
}

impl DpTables {
    /// Tables for a node whose left part is `left` and right part `right`
    /// (both sorted by x, every left x below every right x).
    pub fn compute(left: &[Point], right: &[Point], tau: usize) -> Self {
        debug_assert!(tau >= 1);
        // highest base: sweep right part left to right, maximize the base rank
        let order_r: Vec<usize> = (0..right.len()).collect();
        let (ys_r, _) = local_ranks(right.iter().map(|p| p.y));
        let ranks_r: Vec<u32> = right.iter().map(|p| p.y).collect();
        let (base, depth_right) = run_levels(&order_r, &ys_r, &ranks_r, tau, |v| v as i64);

        // lowest peak: reflected sweep (decreasing x, decreasing y), minimize the peak
        let nl = left.len() as u32;
        let order_l: Vec<usize> = (0..left.len()).rev().collect();
        let (ys_l, _) = local_ranks(left.iter().map(|p| p.y));
        let ys_l_sweep: Vec<u32> = order_l.iter().map(|&k| nl + 1 - ys_l[k]).collect();
        let ranks_l: Vec<u32> = left.iter().map(|p| p.y).collect();
        let (peak, depth_left) = run_levels(&order_l, &ys_l_sweep, &ranks_l, tau, |v| -(v as i64));

        DpTables {
            left: left.to_vec(),
            right: right.to_vec(),
            depth_left,
            depth_right,
            peak,
            base,
        }
    }

    pub fn left(&self) -> &[Point] {
        &self.left
    }

    pub fn right(&self) -> &[Point] {
        &self.right
    }

    /// Number of stored peak levels (lengths with at least one run).
    pub fn depth_left(&self) -> usize {
        self.depth_left
    }

    pub fn depth_right(&self) -> usize {
        self.depth_right
    }

    /// Highest base (rank) of a run of length `beta` ending at `right[k]`.
    pub fn highest_base(&self, k: usize, beta: usize) -> Option<u32> {
        if beta == 0 || beta > self.depth_right {
            return None;
        }
        let v = self.base[(beta - 1) * self.right.len() + k].value;
        (v != 0).then_some(v)
    }

    /// Lowest peak (rank) of a run of length `alpha` starting at `left[k]`.
    pub fn lowest_peak(&self, k: usize, alpha: usize) -> Option<u32> {
        if alpha == 0 || alpha > self.depth_left {
            return None;
        }
        let v = self.peak[(alpha - 1) * self.left.len() + k].value;
        (v != 0).then_some(v)
    }

    /// The run realizing `highest_base(k, beta)`, in increasing x.
    pub fn base_chain(&self, k: usize, beta: usize) -> Vec<Point> {
        let nr = self.right.len();
        let mut out = vec![self.right[k]];
        let mut cur = k;
        for level in (2..=beta).rev() {
            cur = self.base[(level - 1) * nr + cur].link as usize;
            out.push(self.right[cur]);
        }
        out.reverse();
        out
    }

    /// The run realizing `lowest_peak(k, alpha)`, in increasing x.
    pub fn peak_chain(&self, k: usize, alpha: usize) -> Vec<Point> {
        let nl = self.left.len();
        let mut out = vec![self.left[k]];
        let mut cur = k;
        for level in (2..=alpha).rev() {
            cur = self.peak[(level - 1) * nl + cur].link as usize;
            out.push(self.left[cur]);
        }
        out
    }
}

/// `L(q, .)` and `R(q, .)` for one query at its node: `(rank value, side index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrProfile {
    /// `left[alpha - 1]`: lowest reachable peak of a length-`alpha` run.
    pub left: Vec<Option<(u32, u32)>>,
    /// `right[beta - 1]`: highest reachable base of a length-`beta` run.
    pub right: Vec<Option<(u32, u32)>>,
}

impl LrProfile {
    /// `R` non-increasing and `L` non-decreasing, counting undefined entries
    /// as `-inf` and `+inf` respectively.
    pub fn is_monotone(&self) -> bool {
        let r = |e: &Option<(u32, u32)>| e.map_or(i64::MIN, |v| v.0 as i64);
        let l = |e: &Option<(u32, u32)>| e.map_or(i64::MAX, |v| v.0 as i64);
        self.right.windows(2).all(|w| r(&w[0]) >= r(&w[1]))
            && self.left.windows(2).all(|w| l(&w[0]) <= l(&w[1]))
    }

    /// Best compatible pair `(alpha, beta)` including one-sided pairs. Ties
    /// prefer the larger `alpha`.
    pub fn best_pair(&self) -> (usize, usize) {
        let ldef = self.left.iter().take_while(|e| e.is_some()).count();
        let rvals: Vec<u32> = self.right.iter().map_while(|e| e.map(|v| v.0)).collect();
        let mut best = (0, 0);
        for alpha in (0..=ldef).rev() {
            let peak = if alpha == 0 { 0 } else { self.left[alpha - 1].unwrap().0 };
            let beta = rvals.partition_point(|&b| b > peak);
            if alpha + beta > best.0 + best.1 {
                best = (alpha, beta);
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
struct Node {
    /// Inclusive position range into the point list.
    lo: usize,
    hi: usize,
    mid: usize,
    kids: Option<(usize, usize)>,
    tables: Option<DpTables>,
}

/// Recursion tree of [`DpTables`] over one point class.
#[derive(Clone, Debug)]
pub struct SmallLisIndex {
    color: Option<ColorId>,
    points: Vec<Point>,
    tau: usize,
    nodes: Vec<Node>,
}

/// A query routed to a node, in position space.
#[derive(Clone, Copy, Debug)]
struct Routed {
    slot: usize,
    l: usize,
    r: usize,
    rb: RankBox,
}

impl SmallLisIndex {
    pub fn build(class: PointClass<'_>, tau: usize) -> Self {
        let tau = tau.max(1);
        let points = class.points.to_vec();
        let mut nodes = Vec::new();
        if !points.is_empty() {
            fn rec(nodes: &mut Vec<Node>, lo: usize, hi: usize) -> usize {
                let id = nodes.len();
                let mid = (lo + hi) / 2;
                nodes.push(Node {
                    lo,
                    hi,
                    mid,
                    kids: None,
                    tables: None,
                });
                if lo < hi {
                    let a = rec(nodes, lo, mid);
                    let b = rec(nodes, mid + 1, hi);
                    nodes[id].kids = Some((a, b));
                }
                id
            }
            rec(&mut nodes, 0, points.len() - 1);
        }
        par::for_each_mut(&mut nodes, |node| {
            if node.kids.is_some() {
                node.tables = Some(DpTables::compute(
                    &points[node.lo..=node.mid],
                    &points[node.mid + 1..=node.hi],
                    tau,
                ));
            }
        });
        SmallLisIndex {
            color: class.color,
            points,
            tau,
            nodes,
        }
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn color(&self) -> Option<ColorId> {
        self.color
    }

    /// Stored table entries over all nodes.
    pub fn table_entries(&self) -> usize {
        self.nodes
            .iter()
            .filter_map(|n| n.tables.as_ref())
            .map(|t| t.peak.len() + t.base.len())
            .sum()
    }

    /// Tables of every internal node, root first.
    pub fn tables(&self) -> impl Iterator<Item = &DpTables> {
        self.nodes.iter().filter_map(|n| n.tables.as_ref())
    }

    fn positions(&self, rb: &RankBox) -> Option<(usize, usize)> {
        let l = self.points.partition_point(|p| p.x < rb.x1);
        let r = self.points.partition_point(|p| p.x <= rb.x2);
        (l < r).then(|| (l, r - 1))
    }

    fn route(&self, l: usize, r: usize) -> usize {
        let mut id = 0;
        loop {
            let node = &self.nodes[id];
            match node.kids {
                None => return id,
                Some((a, b)) => {
                    if r <= node.mid {
                        id = a;
                    } else if l > node.mid {
                        id = b;
                    } else {
                        return id;
                    }
                }
            }
        }
    }

    /// Queries grouped by the node answering them.
    fn group(&self, boxes: &[Option<RankBox>]) -> Vec<(usize, Vec<Routed>)> {
        let mut groups: Vec<Vec<Routed>> = vec![Vec::new(); self.nodes.len()];
        for (slot, rb) in boxes.iter().enumerate() {
            let Some(rb) = rb else { continue };
            if let Some((l, r)) = self.positions(rb) {
                groups[self.route(l, r)].push(Routed { slot, l, r, rb: *rb });
            }
        }
        groups
            .into_iter()
            .enumerate()
            .filter(|(_, g)| !g.is_empty())
            .collect()
    }

    fn profiles(&self, node: &Node, group: &[Routed]) -> Vec<LrProfile> {
        let t = node.tables.as_ref().expect("internal node");
        let (nl, nr) = (t.left.len(), t.right.len());
        let mut tree = MaxFenwick::new(nl.max(nr));
        let mut out: Vec<LrProfile> = group
            .iter()
            .map(|_| LrProfile {
                left: vec![None; t.depth_left],
                right: vec![None; t.depth_right],
            })
            .collect();

        // R: points right[k] with k <= r - mid - 1 and y <= y2, max base
        let (ly_r, sorted_r) = local_ranks(t.right.iter().map(|p| p.y));
        let qr: Vec<(u32, u32)> = group
            .iter()
            .map(|g| {
                let ky = sorted_r.partition_point(|&y| y <= g.rb.y2) as u32;
                ((g.r - node.mid - 1) as u32, ky)
            })
            .collect();
        let order_r = query_order(&qr);
        for beta in 1..=t.depth_right {
            let pts: Vec<(u32, u32, Best)> = (0..nr)
                .filter_map(|k| {
                    t.highest_base(k, beta)
                        .map(|b| (k as u32, ly_r[k], Best::new(b as i64, k as u32)))
                })
                .collect();
            let res = dominance_queries_in_order(&pts, nr, &qr, &order_r, &mut tree);
            for (i, g) in group.iter().enumerate() {
                out[i].right[beta - 1] = res[i]
                    .filter(|b| b.weight >= g.rb.y1 as i64)
                    .map(|b| (b.weight as u32, b.payload));
            }
        }

        // L: points left[k] with k >= l - lo and y >= y1, min peak (reflected)
        let (ly_l, sorted_l) = local_ranks(t.left.iter().map(|p| p.y));
        let ql: Vec<(u32, u32)> = group
            .iter()
            .map(|g| {
                let ge = nl - sorted_l.partition_point(|&y| y < g.rb.y1);
                ((nl - 1 - (g.l - node.lo)) as u32, ge as u32)
            })
            .collect();
        let order_l = query_order(&ql);
        for alpha in 1..=t.depth_left {
            let pts: Vec<(u32, u32, Best)> = (0..nl)
                .rev()
                .filter_map(|k| {
                    t.lowest_peak(k, alpha).map(|a| {
                        ((nl - 1 - k) as u32, nl as u32 + 1 - ly_l[k], Best::new(-(a as i64), k as u32))
                    })
                })
                .collect();
            let res = dominance_queries_in_order(&pts, nl, &ql, &order_l, &mut tree);
            for (i, g) in group.iter().enumerate() {
                out[i].left[alpha - 1] = res[i]
                    .map(|b| ((-b.weight) as u32, b.payload))
                    .filter(|&(a, _)| a <= g.rb.y2);
            }
        }
        out
    }

    fn answer(&self, t: &DpTables, p: &LrProfile) -> LisAnswer {
        let (alpha, beta) = p.best_pair();
        let mut xs = Vec::with_capacity(alpha + beta);
        if alpha > 0 {
            let k = p.left[alpha - 1].unwrap().1 as usize;
            xs.extend(t.peak_chain(k, alpha).iter().map(|q| q.x));
        }
        if beta > 0 {
            let k = p.right[beta - 1].unwrap().1 as usize;
            xs.extend(t.base_chain(k, beta).iter().map(|q| q.x));
        }
        LisAnswer::from_indices(xs, self.color)
    }

    /// `L`/`R` profiles of queries answered at a straddled node; `None` for
    /// empty queries and queries resolved at a leaf.
    pub fn lr_profiles(&self, boxes: &[Option<RankBox>]) -> Vec<Option<LrProfile>> {
        let mut out = vec![None; boxes.len()];
        for (id, group) in self.group(boxes) {
            let node = &self.nodes[id];
            if node.kids.is_none() {
                continue;
            }
            for (g, p) in group.iter().zip(self.profiles(node, &group)) {
                out[g.slot] = Some(p);
            }
        }
        out
    }

    /// Answer a batch of (rank-space) queries; `None` boxes are empty.
    pub fn query_batch(&self, boxes: &[Option<RankBox>]) -> Vec<LisAnswer> {
        let groups = self.group(boxes);
        let answered = par::map(&groups, |(id, group)| {
            let node = &self.nodes[*id];
            match &node.tables {
                None => {
                    let p = self.points[node.lo];
                    group
                        .iter()
                        .map(|g| {
                            let ans = if g.rb.contains(p) {
                                LisAnswer::from_indices(vec![p.x], self.color)
                            } else {
                                LisAnswer::empty()
                            };
                            (g.slot, ans)
                        })
                        .collect::<Vec<_>>()
                }
                Some(t) => group
                    .iter()
                    .zip(self.profiles(node, group))
                    .map(|(g, p)| (g.slot, self.answer(t, &p)))
                    .collect(),
            }
        });
        let mut out = vec![LisAnswer::empty(); boxes.len()];
        for (slot, ans) in answered.into_iter().flatten() {
            out[slot] = ans;
        }
        out
    }

    pub fn query(&self, rb: &RankBox) -> LisAnswer {
        self.query_batch(&[Some(*rb)]).pop().unwrap()
    }
}

/// One [`SmallLisIndex`] per indexed color; queries report the best color.
#[derive(Clone, Debug)]
pub struct ColoredSmallLis {
    per_color: Vec<SmallLisIndex>,
}

/// Longest answer; on equal length the earlier one (smaller color) stays.
pub(crate) fn keep_longer(acc: &mut LisAnswer, cand: LisAnswer) {
    if cand.length > acc.length {
        *acc = cand;
    }
}

impl ColoredSmallLis {
    /// `taus[i]` is the table depth for `classes[i]`.
    pub fn build(classes: &[PointClass<'_>], taus: &[usize]) -> Self {
        debug_assert_eq!(classes.len(), taus.len());
        let jobs: Vec<(PointClass<'_>, usize)> = classes.iter().copied().zip(taus.iter().copied()).collect();
        ColoredSmallLis {
            per_color: par::map(&jobs, |&(c, t)| SmallLisIndex::build(c, t)),
        }
    }

    pub fn indexes(&self) -> &[SmallLisIndex] {
        &self.per_color
    }

    pub fn query_batch(&self, boxes: &[Option<RankBox>]) -> Vec<LisAnswer> {
        let mut best = vec![LisAnswer::empty(); boxes.len()];
        for idx in &self.per_color {
            for (acc, cand) in best.iter_mut().zip(idx.query_batch(boxes)) {
                keep_longer(acc, cand);
            }
        }
        best
    }
}
