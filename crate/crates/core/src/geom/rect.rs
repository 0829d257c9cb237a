//! Containment-max over weighted rectangles.
//!
//! A rectangle `[xlo, xhi] x [ylo, yhi]` lies inside a query `[qx1, qx2] x
//! [qy1, qy2]` iff its four bounds satisfy `xlo >= qx1`, `xhi <= qx2`,
//! `ylo >= qy1`, `yhi <= qy2`: an orthant query on 4D points. The points are
//! indexed by a k-d tree whose nodes carry their subtree bounding box and best
//! weight, so fully covered subtrees answer in O(1) and subtrees that cannot
//! improve the running best are skipped.

use super::Best;

/// Static k-d tree answering max-weight queries over axis-aligned boxes.
#[derive(Clone, Debug)]
pub struct KdMax<const K: usize> {
    pts: Vec<[i64; K]>,
    keys: Vec<u64>,
    /// Per node (indexed by the median slot of its range): subtree bounds and best.
    lo: Vec<[i64; K]>,
    hi: Vec<[i64; K]>,
    best: Vec<u64>,
}

impl<const K: usize> KdMax<K> {
    pub fn build(items: Vec<([i64; K], Best)>) -> Self {
        let mut items: Vec<([i64; K], u64)> = items.into_iter().map(|(p, b)| (p, b.pack())).collect();
        let n = items.len();
        let mut lo = vec![[0; K]; n];
        let mut hi = vec![[0; K]; n];
        let mut best = vec![0; n];
        fn rec<const K: usize>(
            items: &mut [([i64; K], u64)],
            base: usize,
            depth: usize,
            lo: &mut [[i64; K]],
            hi: &mut [[i64; K]],
            best: &mut [u64],
        ) {
            if items.is_empty() {
                return;
            }
            let d = depth % K;
            let m = items.len() / 2;
            items.select_nth_unstable_by_key(m, |it| it.0[d]);
            let mut l = [i64::MAX; K];
            let mut h = [i64::MIN; K];
            let mut b = 0;
            for it in items.iter() {
                for k in 0..K {
                    l[k] = l[k].min(it.0[k]);
                    h[k] = h[k].max(it.0[k]);
                }
                b = b.max(it.1);
            }
            lo[base + m] = l;
            hi[base + m] = h;
            best[base + m] = b;
            let (left, rest) = items.split_at_mut(m);
            rec(left, base, depth + 1, lo, hi, best);
            rec(&mut rest[1..], base + m + 1, depth + 1, lo, hi, best);
        }
        rec(&mut items, 0, 0, &mut lo, &mut hi, &mut best);
        let (pts, keys) = items.into_iter().unzip();
        KdMax { pts, keys, lo, hi, best }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// Best among points with `qlo[k] <= p[k] <= qhi[k]` for every `k`.
    pub fn query(&self, qlo: [i64; K], qhi: [i64; K]) -> Option<Best> {
        let mut acc = 0u64;
        self.rec(0, self.pts.len(), &qlo, &qhi, &mut acc);
        Best::unpack(acc)
    }

    fn rec(&self, l: usize, r: usize, qlo: &[i64; K], qhi: &[i64; K], acc: &mut u64) {
        if l >= r {
            return;
        }
        let m = l + (r - l) / 2;
        if self.best[m] <= *acc {
            return;
        }
        let (bl, bh) = (&self.lo[m], &self.hi[m]);
        let mut inside = true;
        for k in 0..K {
            if bh[k] < qlo[k] || bl[k] > qhi[k] {
                return;
            }
            inside &= qlo[k] <= bl[k] && bh[k] <= qhi[k];
        }
        if inside {
            *acc = self.best[m];
            return;
        }
        let p = &self.pts[m];
        if (0..K).all(|k| qlo[k] <= p[k] && p[k] <= qhi[k]) && self.keys[m] > *acc {
            *acc = self.keys[m];
        }
        self.rec(l, m, qlo, qhi, acc);
        self.rec(m + 1, r, qlo, qhi, acc);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedRect {
    pub xlo: i64,
    pub xhi: i64,
    pub ylo: i64,
    pub yhi: i64,
    pub weight: i64,
    pub payload: u32,
}

#[derive(Clone, Debug)]
pub struct WeightedRectSet {
    rects: Vec<WeightedRect>,
    index: KdMax<4>,
}

impl WeightedRectSet {
    pub fn build(rects: Vec<WeightedRect>) -> Self {
        debug_assert!(rects.iter().all(|r| r.xlo <= r.xhi && r.ylo <= r.yhi));
        let items = rects
            .iter()
            .map(|r| ([r.xlo, r.xhi, r.ylo, r.yhi], Best::new(r.weight, r.payload)))
            .collect();
        WeightedRectSet {
            index: KdMax::build(items),
            rects,
        }
    }

    pub fn rects(&self) -> &[WeightedRect] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Best rectangle lying entirely inside `[qx1, qx2] x [qy1, qy2]`.
    pub fn query(&self, qx1: i64, qx2: i64, qy1: i64, qy2: i64) -> Option<Best> {
        self.index.query(
            [qx1, i64::MIN, qy1, i64::MIN],
            [i64::MAX, qx2, i64::MAX, qy2],
        )
    }
}
