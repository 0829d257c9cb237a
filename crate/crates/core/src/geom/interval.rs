//! Containment-max over weighted intervals.
//!
//! Intervals are ordered by decreasing `lo`, so `lo >= qlo` selects a prefix
//! of that order. A Fenwick layout over the prefix stores, per node, the
//! covered intervals sorted by `hi` with running bests; a query visits
//! O(log n) nodes and binary searches each.

use super::Best;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedInterval {
    pub lo: i64,
    pub hi: i64,
    pub weight: i64,
    pub payload: u32,
}

#[derive(Clone, Debug, Default)]
struct Bucket {
    his: Vec<i64>,
    best: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct WeightedIntervalSet {
    intervals: Vec<WeightedInterval>,
    /// Lows in decreasing order.
    los: Vec<i64>,
    buckets: Vec<Bucket>,
}

impl WeightedIntervalSet {
    pub fn build(intervals: Vec<WeightedInterval>) -> Self {
        debug_assert!(intervals.iter().all(|iv| iv.lo <= iv.hi));
        let mut order: Vec<usize> = (0..intervals.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(intervals[i].lo));
        let los: Vec<i64> = order.iter().map(|&i| intervals[i].lo).collect();
        let n = order.len();
        let mut buckets = vec![Bucket::default(); n + 1];
        for (node, bucket) in buckets.iter_mut().enumerate().skip(1) {
            let start = node - (node & node.wrapping_neg());
            let mut items: Vec<(i64, u64)> = order[start..node]
                .iter()
                .map(|&i| {
                    let iv = &intervals[i];
                    (iv.hi, Best::new(iv.weight, iv.payload).pack())
                })
                .collect();
            items.sort_unstable_by_key(|&(h, _)| h);
            let mut acc = 0;
            bucket.his = items.iter().map(|&(h, _)| h).collect();
            bucket.best = items
                .iter()
                .map(|&(_, k)| {
                    acc = acc.max(k);
                    acc
                })
                .collect();
        }
        WeightedIntervalSet {
            intervals,
            los,
            buckets,
        }
    }

    pub fn intervals(&self) -> &[WeightedInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Best interval lying entirely inside `[qlo, qhi]`.
    pub fn query(&self, qlo: i64, qhi: i64) -> Option<Best> {
        let mut i = self.los.partition_point(|&l| l >= qlo);
        let mut acc = 0u64;
        while i > 0 {
            let b = &self.buckets[i];
            let s = b.his.partition_point(|&h| h <= qhi);
            if s > 0 {
                acc = acc.max(b.best[s - 1]);
            }
            i &= i - 1;
        }
        Best::unpack(acc)
    }
}
