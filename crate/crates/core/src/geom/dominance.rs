//! Offline 2D dominance max by sweeping x with a prefix-max tree over y.

use super::{Best, MaxFenwick};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub items: usize,
    pub tree_ops: u64,
}

/// Sweep items in the given order, which must be strictly increasing in x.
///
/// For every item `j` the callback receives the best weight among earlier
/// items with a strictly smaller `ys` rank (`None` when there is none) and
/// returns the weight item `j` itself contributes, if any. This lets the
/// weight of an item depend on what it dominates, as in LIS-style
/// recurrences.
///
/// `ys` are ranks in `1..=y_bound`.
pub fn offline_dominance_max_2d<F>(ys: &[u32], y_bound: usize, mut produce: F) -> SweepStats
where
    F: FnMut(usize, Option<Best>) -> Option<Best>,
{
    let mut tree = MaxFenwick::new(y_bound);
    for (j, &y) in ys.iter().enumerate() {
        let below = tree.prefix(y as usize - 1);
        if let Some(w) = produce(j, below) {
            tree.update(y as usize, w);
        }
    }
    SweepStats {
        items: ys.len(),
        tree_ops: tree.ops(),
    }
}

/// Closed dominance queries over a static weighted point set.
///
/// `points` are `(x, y, weight)` sorted by nondecreasing x with `y` in
/// `1..=y_bound`. Query `(qx, qy)` returns the best weight among points with
/// `x <= qx` and `y <= qy`.
pub fn dominance_queries(
    points: &[(u32, u32, Best)],
    y_bound: usize,
    queries: &[(u32, u32)],
    tree: &mut MaxFenwick,
) -> Vec<Option<Best>> {
    dominance_queries_in_order(points, y_bound, queries, &query_order(queries), tree)
}

/// Query positions sorted by `qx`, for reuse across point sets.
pub fn query_order(queries: &[(u32, u32)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..queries.len()).collect();
    order.sort_unstable_by_key(|&q| queries[q].0);
    order
}

/// [`dominance_queries`] with the order from [`query_order`] precomputed.
pub fn dominance_queries_in_order(
    points: &[(u32, u32, Best)],
    y_bound: usize,
    queries: &[(u32, u32)],
    order: &[usize],
    tree: &mut MaxFenwick,
) -> Vec<Option<Best>> {
    debug_assert!(points.windows(2).all(|w| w[0].0 <= w[1].0));
    debug_assert!(tree.len() >= y_bound);
    tree.reset();
    let mut out = vec![None; queries.len()];
    let mut next = 0;
    for &q in order {
        let (qx, qy) = queries[q];
        while next < points.len() && points[next].0 <= qx {
            let (_, y, w) = points[next];
            tree.update(y as usize, w);
            next += 1;
        }
        out[q] = tree.prefix((qy as usize).min(y_bound));
    }
    out
}

/// Ranks `1..` of `ys` among themselves (distinct values), plus `ys` sorted.
pub fn local_ranks(ys: impl Iterator<Item = u32>) -> (Vec<u32>, Vec<u32>) {
    let ys: Vec<u32> = ys.collect();
    let mut sorted = ys.clone();
    sorted.sort_unstable();
    let ranks = ys
        .iter()
        .map(|y| sorted.partition_point(|s| s < y) as u32 + 1)
        .collect();
    (ranks, sorted)
}
