//! Range-max toolbox: every technique reduces its inner loop to one of these.
//!
//! * [`dominance`]: offline 2D dominance max by an x-sweep over a prefix-max
//!   Fenwick tree on y-ranks.
//! * [`tree3`]: a static 3D range tree with a strict z filter.
//! * [`rect`]: weighted rectangles with containment-max queries.
//! * [`interval`]: weighted intervals with containment-max queries.
//!
//! All maxima return their argmax. Equal weights resolve to the smallest
//! payload.

pub mod dominance;
pub mod fenwick;
pub mod interval;
pub mod rect;
pub mod tree3;

pub use dominance::{
    dominance_queries, dominance_queries_in_order, local_ranks, offline_dominance_max_2d, query_order,
    SweepStats,
};
pub use fenwick::MaxFenwick;
pub use interval::{WeightedInterval, WeightedIntervalSet};
pub use rect::{KdMax, WeightedRect, WeightedRectSet};
pub use tree3::{Aggregate, Tree3, WeightedPoint3, ZFilter};

/// A weight together with the id of the item that carries it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Best {
    pub weight: i64,
    pub payload: u32,
}

impl Best {
    pub fn new(weight: i64, payload: u32) -> Self {
        Best { weight, payload }
    }

    /// Strictly preferred over `other`: larger weight, then smaller payload.
    pub fn beats(&self, other: &Best) -> bool {
        self.weight > other.weight || (self.weight == other.weight && self.payload < other.payload)
    }

    /// Order-preserving packing into a nonzero `u64`; `0` encodes "none".
    /// Weights must fit in `i32`.
    #[inline]
    pub(crate) fn pack(self) -> u64 {
        debug_assert!(self.weight >= i32::MIN as i64 && self.weight <= i32::MAX as i64);
        let w = (self.weight - i32::MIN as i64) as u64 + 1;
        (w << 32) | (!self.payload) as u64
    }

    #[inline]
    pub(crate) fn unpack(key: u64) -> Option<Best> {
        if key == 0 {
            return None;
        }
        let w = (key >> 32) as i64 - 1 + i32::MIN as i64;
        Some(Best {
            weight: w,
            payload: !(key as u32),
        })
    }
}

/// Preferred of two optional candidates.
pub fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.beats(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}
