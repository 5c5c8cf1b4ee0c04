use std::ops::Index;

use crate::metrics::count_inversions;

/// The working list of a classic sort.
///
/// When true ranks are supplied, the list keeps its Kendall-tau distance to
/// the sorted order up to date under every edit, at a cost proportional to
/// the distance the edit spans rather than to the list length.
#[derive(Debug)]
pub(crate) struct WorkList {
    items: Vec<usize>,
    rank: Option<Vec<usize>>,
    tau: u64,
    /// Heap region length when the list is read as a heap.
    heap_len: Option<usize>,
    /// Inversions among `items[..heap_len]`.
    heap_tau: u64,
}

impl WorkList {
    pub(crate) fn new(n: usize, rank: Option<Vec<usize>>) -> Self {
        let tau = rank.as_deref().map_or(0, count_inversions);
        Self {
            items: (0..n).collect(),
            rank,
            tau,
            heap_len: None,
            heap_tau: 0,
        }
    }

    pub(crate) fn to_vec(&self) -> Vec<usize> {
        self.items.clone()
    }

    #[inline]
    fn gt(rank: &[usize], a: usize, b: usize) -> i64 {
        (rank[a] > rank[b]) as i64
    }

    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        if let Some(rank) = self.rank.as_deref() {
            let (x, y) = (self.items[a], self.items[b]);
            let mut delta = Self::gt(rank, y, x) - Self::gt(rank, x, y);
            for &m in &self.items[a + 1..b] {
                delta += Self::gt(rank, y, m) + Self::gt(rank, m, x)
                    - Self::gt(rank, x, m)
                    - Self::gt(rank, m, y);
            }
            self.tau = self.tau.wrapping_add_signed(delta);
            match self.heap_len {
                Some(len) if b < len => {
                    self.heap_tau = self.heap_tau.wrapping_add_signed(delta);
                }
                // y enters the heap region in place of x
                Some(len) if a < len => {
                    let mut delta = 0;
                    for &m in &self.items[..a] {
                        delta += Self::gt(rank, m, y) - Self::gt(rank, m, x);
                    }
                    for &m in &self.items[a + 1..len] {
                        delta += Self::gt(rank, y, m) - Self::gt(rank, x, m);
                    }
                    self.heap_tau = self.heap_tau.wrapping_add_signed(delta);
                }
                _ => {}
            }
        }
        self.items.swap(a, b);
    }

    /// Moves the item at `from` to position `to`, shifting the ones between.
    pub(crate) fn move_item(&mut self, from: usize, to: usize) {
        if from == to {
            return;
        }
        debug_assert!(self.heap_len.is_none(), "heaps only swap");
        if let Some(rank) = self.rank.as_deref() {
            let x = self.items[from];
            let delta: i64 = if from < to {
                self.items[from + 1..=to]
                    .iter()
                    .map(|&m| Self::gt(rank, m, x) - Self::gt(rank, x, m))
                    .sum()
            } else {
                self.items[to..from]
                    .iter()
                    .map(|&m| Self::gt(rank, x, m) - Self::gt(rank, m, x))
                    .sum()
            };
            self.tau = self.tau.wrapping_add_signed(delta);
        }
        if from < to {
            self.items[from..=to].rotate_left(1);
        } else {
            self.items[to..=from].rotate_right(1);
        }
    }

    /// Reads the list as `reverse(items[..len]) ++ items[len..]` from now on.
    pub(crate) fn set_heap_len(&mut self, len: usize) {
        if let Some(rank) = self.rank.as_deref() {
            match self.heap_len {
                None => {
                    let ranks: Vec<usize> = self.items[..len].iter().map(|&i| rank[i]).collect();
                    self.heap_tau = count_inversions(&ranks);
                }
                Some(old) => {
                    assert!(len <= old, "heap region only shrinks");
                    for q in (len..old).rev() {
                        let x = self.items[q];
                        let above = self.items[..q]
                            .iter()
                            .filter(|&&m| rank[m] > rank[x])
                            .count();
                        self.heap_tau -= above as u64;
                    }
                }
            }
        }
        self.heap_len = Some(len);
    }

    pub(crate) fn clear_heap(&mut self) {
        self.heap_len = None;
    }

    /// Distance of the estimate this list stands for.
    pub(crate) fn view_tau(&self) -> u64 {
        match self.heap_len {
            None => self.tau,
            Some(len) => {
                let pairs = (len as u64 * len.saturating_sub(1) as u64) / 2;
                self.tau + pairs - 2 * self.heap_tau
            }
        }
    }

    pub(crate) fn write_view(&self, out: &mut Vec<usize>) {
        out.clear();
        match self.heap_len {
            None => out.extend_from_slice(&self.items),
            Some(len) => {
                out.extend(self.items[..len].iter().rev());
                out.extend_from_slice(&self.items[len..]);
            }
        }
    }
}

impl Index<usize> for WorkList {
    type Output = usize;

    fn index(&self, p: usize) -> &usize {
        &self.items[p]
    }
}
