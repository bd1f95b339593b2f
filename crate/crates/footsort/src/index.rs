//! Ordered set of positions over a fixed universe `[0, n)`.
//!
//! Backed by a Fenwick tree, so insert, delete, min, successor, predecessor
//! and count-of-keys-in-interval all run in O(log n). The decider charges one
//! op-counter tick per logical call; the tree itself is oblivious to that.

#[derive(Debug, Clone)]
pub struct PosIndex {
    tree: Vec<u32>,
    universe: usize,
    len: usize,
}

impl PosIndex {
    pub fn new(universe: usize) -> Self {
        PosIndex {
            tree: vec![0; universe + 1],
            universe,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn add(&mut self, pos: u32, delta: i32) {
        let mut i = pos as usize + 1;
        while i <= self.universe {
            self.tree[i] = (self.tree[i] as i64 + delta as i64) as u32;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of keys strictly below `bound` (clamped to the universe).
    pub fn count_below(&self, bound: u32) -> usize {
        let mut i = (bound as usize).min(self.universe);
        let mut sum = 0usize;
        while i > 0 {
            sum += self.tree[i] as usize;
            i -= i & i.wrapping_neg();
        }
        sum
    }

    /// Number of keys in the open interval `(lo, hi)`.
    pub fn count_between(&self, lo: u32, hi: u32) -> usize {
        if hi <= lo + 1 {
            return 0;
        }
        self.count_below(hi) - self.count_below(lo + 1)
    }

    pub fn insert(&mut self, pos: u32) {
        debug_assert!((pos as usize) < self.universe);
        debug_assert!(!self.contains(pos), "insert of present key {pos}");
        self.add(pos, 1);
        self.len += 1;
    }

    pub fn remove(&mut self, pos: u32) {
        debug_assert!(self.contains(pos), "remove of absent key {pos}");
        self.add(pos, -1);
        self.len -= 1;
    }

    pub fn contains(&self, pos: u32) -> bool {
        self.count_below(pos + 1) > self.count_below(pos)
    }

    /// The k-th smallest key, 1-indexed. Caller guarantees `1 <= k <= len`.
    fn select(&self, k: usize) -> u32 {
        debug_assert!(k >= 1 && k <= self.len);
        let mut pos = 0usize;
        let mut rem = k;
        let mut step = self.universe.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= self.universe && (self.tree[next] as usize) < rem {
                pos = next;
                rem -= self.tree[next] as usize;
            }
            step >>= 1;
        }
        pos as u32
    }

    pub fn min(&self) -> Option<u32> {
        if self.len == 0 {
            None
        } else {
            Some(self.select(1))
        }
    }

    pub fn first_at_or_after(&self, pos: u32) -> Option<u32> {
        let below = self.count_below(pos);
        if below < self.len {
            Some(self.select(below + 1))
        } else {
            None
        }
    }

    pub fn first_after(&self, pos: u32) -> Option<u32> {
        self.first_at_or_after(pos + 1)
    }

    pub fn last_at_or_before(&self, pos: u32) -> Option<u32> {
        let upto = self.count_below(pos + 1);
        if upto > 0 {
            Some(self.select(upto))
        } else {
            None
        }
    }
}
