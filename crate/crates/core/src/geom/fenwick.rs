use super::Best;

/// Prefix-max Fenwick tree over positions `1..=n`, keyed by packed [`Best`].
#[derive(Clone, Debug)]
pub struct MaxFenwick {
    tree: Vec<u64>,
    ops: u64,
}

impl MaxFenwick {
    pub fn new(n: usize) -> Self {
        MaxFenwick {
            tree: vec![0; n + 1],
            ops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reset(&mut self) {
        self.tree.fill(0);
    }

    /// Inner-loop steps performed so far by `update` and `prefix`.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    #[inline]
    pub fn update(&mut self, pos: usize, value: Best) {
        debug_assert!(pos >= 1 && pos < self.tree.len());
        let key = value.pack();
        let mut i = pos;
        while i < self.tree.len() {
            self.ops += 1;
            if self.tree[i] < key {
                self.tree[i] = key;
            }
            i += i & i.wrapping_neg();
        }
    }

    /// Best over positions `1..=pos`; `pos == 0` is the empty prefix.
    #[inline]
    pub fn prefix(&mut self, pos: usize) -> Option<Best> {
        let mut i = pos.min(self.len());
        let mut acc = 0u64;
        while i > 0 {
            self.ops += 1;
            acc = acc.max(self.tree[i]);
            i &= i - 1;
        }
        Best::unpack(acc)
    }
}
