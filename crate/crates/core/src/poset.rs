//! Partial orders over element indices, closed under transitivity.
//!
//! Every comparison outcome `lo < hi` is folded into a reachability matrix
//! stored twice as bit rows: `up[x]` holds every `y` with `x ⪯ y` and
//! `down[y]` holds every `x` with `x ⪯ y`. Recording a new relation ORs the
//! ancestor row of `hi` into each descendant of `lo` (and symmetrically), so
//! one update costs `O(n²/64)` word operations in the worst case and the
//! descendant/ancestor counts stay available in `O(1)`.

use crate::error::{Error, Result};
use crate::estimators::Estimate;

const WORD: usize = 64;

/// Transitively closed order relation on `0..n`.
///
/// Each element counts as its own descendant and ancestor, so `d(i)` and
/// `a(i)` are always at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    n: usize,
    words: usize,
    up: Vec<u64>,
    down: Vec<u64>,
    desc: Vec<u32>,
    anc: Vec<u32>,
    relations: usize,
}

impl PartialOrder {
    /// The empty order: an antichain of `n` elements.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        let words = n.div_ceil(WORD);
        let mut up = vec![0u64; n * words];
        let mut down = vec![0u64; n * words];
        for i in 0..n {
            up[i * words + i / WORD] |= 1 << (i % WORD);
            down[i * words + i / WORD] |= 1 << (i % WORD);
        }
        Ok(Self {
            n,
            words,
            up,
            down,
            desc: vec![1; n],
            anc: vec![1; n],
            relations: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }

    #[inline]
    fn bit(row: &[u64], j: usize) -> bool {
        row[j / WORD] >> (j % WORD) & 1 == 1
    }

    fn up_row(&self, i: usize) -> &[u64] {
        &self.up[i * self.words..(i + 1) * self.words]
    }

    fn down_row(&self, i: usize) -> &[u64] {
        &self.down[i * self.words..(i + 1) * self.words]
    }

    /// Whether `i ⪯ j` is known. Panics on out-of-range indices.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        Self::bit(self.up_row(i), j)
    }

    /// Whether `i` and `j` are distinct and neither `i ⪯ j` nor `j ⪯ i` holds.
    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.leq(i, j) && !self.leq(j, i)
    }

    /// Folds the outcome `lo < hi` into the order.
    ///
    /// Returns `Ok(false)` when the relation was already implied.
    pub fn record(&mut self, lo: usize, hi: usize) -> Result<bool> {
        self.check(lo)?;
        self.check(hi)?;
        if lo == hi {
            return Err(Error::SelfComparison(lo));
        }
        if self.leq(lo, hi) {
            return Ok(false);
        }
        if self.leq(hi, lo) {
            return Err(Error::Contradiction { lo, hi });
        }
        let w = self.words;
        let below: Vec<u64> = self.down_row(lo).to_vec();
        let above: Vec<u64> = self.up_row(hi).to_vec();

        // x ⪯ hi already implies x ⪯ every ancestor of hi
        for x in ones(&below) {
            if self.leq(x, hi) {
                continue;
            }
            let row = &mut self.up[x * w..(x + 1) * w];
            let mut gained = 0;
            for (dst, src) in row.iter_mut().zip(&above) {
                gained += (src & !*dst).count_ones();
                *dst |= src;
            }
            self.anc[x] += gained;
            self.relations += gained as usize;
        }
        for y in ones(&above) {
            if Self::bit(self.down_row(y), lo) {
                continue;
            }
            let row = &mut self.down[y * w..(y + 1) * w];
            let mut gained = 0;
            for (dst, src) in row.iter_mut().zip(&below) {
                gained += (src & !*dst).count_ones();
                *dst |= src;
            }
            self.desc[y] += gained;
        }
        Ok(true)
    }

    /// `d(i)`: number of `j` with `j ⪯ i`, `i` included.
    #[inline]
    pub fn descendants(&self, i: usize) -> u32 {
        self.desc[i]
    }

    /// `a(i)`: number of `j` with `i ⪯ j`, `i` included.
    #[inline]
    pub fn ancestors(&self, i: usize) -> u32 {
        self.anc[i]
    }

    pub fn descendant_counts(&self) -> &[u32] {
        &self.desc
    }

    pub fn ancestor_counts(&self) -> &[u32] {
        &self.anc
    }

    /// Number of ordered pairs `(i, j)`, `i != j`, with `i ⪯ j`.
    pub fn relation_count(&self) -> usize {
        self.relations
    }

    pub fn is_total(&self) -> bool {
        self.relations == self.n * (self.n - 1) / 2
    }

    /// Unordered incomparable pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.incomparable(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// Indices `j` with `i ⪯ j`, `i` included.
    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.up_row(i)).filter(move |&j| j < self.n)
    }

    /// Indices `j` with `j ⪯ i`, `i` included.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.down_row(i)).filter(move |&j| j < self.n)
    }

    /// The unique linear extension of a total order.
    pub fn sorted_order(&self) -> Result<Estimate> {
        if !self.is_total() {
            return Err(Error::NotTotal);
        }
        let mut order = vec![0; self.n];
        for i in 0..self.n {
            order[self.desc[i] as usize - 1] = i;
        }
        Ok(Estimate::from_vec_unchecked(order))
    }
}

/// Positions of set bits, ascending.
fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * WORD + t)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(order: &[usize]) -> PartialOrder {
        let mut po = PartialOrder::new(order.len()).unwrap();
        for w in order.windows(2) {
            po.record(w[0], w[1]).unwrap();
        }
        po
    }

    #[test]
    fn fresh_order_is_antichain() {
        let po = PartialOrder::new(3).unwrap();
        assert_eq!(po.descendant_counts(), &[1, 1, 1]);
        assert_eq!(po.ancestor_counts(), &[1, 1, 1]);
        assert_eq!(po.relation_count(), 0);
        assert_eq!(po.incomparable_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(po.leq(0, 0));
        assert!(!po.leq(0, 1));
        assert!(!po.is_total());
    }

    #[test]
    fn zero_elements_rejected() {
        assert_eq!(PartialOrder::new(0), Err(Error::EmptyOrder));
    }

    #[test]
    fn singleton_is_total() {
        let po = PartialOrder::new(1).unwrap();
        assert!(po.is_total());
        assert_eq!(po.sorted_order().unwrap().as_slice(), &[0]);
    }

    #[test]
    fn record_updates_counts() {
        let mut po = PartialOrder::new(3).unwrap();
        assert!(po.record(0, 1).unwrap());
        assert_eq!(po.descendant_counts(), &[1, 2, 1]);
        assert_eq!(po.ancestor_counts(), &[2, 1, 1]);
        assert_eq!(po.incomparable_pairs(), vec![(0, 2), (1, 2)]);

        let before = po.clone();
        assert!(!po.record(0, 1).unwrap());
        assert_eq!(po, before);
        assert_eq!(po.relation_count(), 1);

        po.record(1, 2).unwrap();
        assert!(po.leq(0, 2));
        assert_eq!(po.descendant_counts(), &[1, 2, 3]);
        assert_eq!(po.ancestor_counts(), &[3, 2, 1]);
        assert!(po.incomparable_pairs().is_empty());
    }

    #[test]
    fn contradictions_and_bad_indices() {
        let mut po = PartialOrder::new(3).unwrap();
        po.record(0, 1).unwrap();
        po.record(1, 2).unwrap();
        assert_eq!(po.record(2, 0), Err(Error::Contradiction { lo: 2, hi: 0 }));
        assert_eq!(po.record(1, 1), Err(Error::SelfComparison(1)));
        assert_eq!(
            po.record(0, 3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn total_orders() {
        assert!(!PartialOrder::new(2).unwrap().is_total());
        let po = chain(&[0, 1, 2, 3]);
        assert!(po.is_total());
        assert_eq!(po.relation_count(), 6);
        assert_eq!(
            chain(&[0, 1, 2]).sorted_order().unwrap().as_slice(),
            &[0, 1, 2]
        );
        assert_eq!(
            chain(&[2, 0, 1]).sorted_order().unwrap().as_slice(),
            &[2, 0, 1]
        );
        assert_eq!(
            PartialOrder::new(2).unwrap().sorted_order(),
            Err(Error::NotTotal)
        );
    }

    #[test]
    fn wide_orders_cross_word_boundaries() {
        let order: Vec<usize> = (0..130).rev().collect();
        let po = chain(&order);
        assert!(po.is_total());
        assert_eq!(po.sorted_order().unwrap().as_slice(), &order[..]);
        assert_eq!(po.above(129).count(), 130);
        assert_eq!(po.below(129).collect::<Vec<_>>(), vec![129]);
    }
}
