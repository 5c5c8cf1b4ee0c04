//! Corsort: pick the next comparison from the current partial order.
//!
//! Among incomparable pairs, Corsort compares the pair minimising
//! `(|Δ(i) - Δ(j)|, max(I(i), I(j)))` lexicographically, where
//! `Δ = d - a` and `I = d + a`. Remaining ties go to the smallest
//! `(min(i, j), max(i, j))`.
//!
//! If `i ≺ j` then `d(j) > d(i)` and `a(i) > a(j)`, so `Δ(j) - Δ(i) >= 2`.
//! Pairs whose `Δ` differ by at most one are therefore always incomparable,
//! which lets the usual case be solved in `O(n)` by bucketing on `Δ`.

use super::session::{Session, Step};
use crate::error::{Error, Result};
use crate::poset::PartialOrder;

pub(super) fn sort<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    let mut picker = PairPicker::default();
    loop {
        let po = s.poset.as_ref().expect("corsort keeps a poset");
        if po.is_total() {
            return Ok(po.sorted_order()?.into_vec());
        }
        let (i, j) = picker.next_pair(po);
        s.less(i, j)?;
    }
}

/// The next pair Corsort compares, as `(i, j)` with `i < j`.
pub fn corsort_next_pair(po: &PartialOrder) -> Result<(usize, usize)> {
    if po.is_total() {
        return Err(Error::AlreadyTotal);
    }
    Ok(PairPicker::default().next_pair(po))
}

const NONE: u32 = u32::MAX;

/// Per-bucket scratch space, reused across steps of one run.
#[derive(Default)]
struct PairPicker {
    min1: Vec<u32>,
    min2: Vec<u32>,
    first: Vec<u32>,
    second: Vec<u32>,
}

impl PairPicker {
    fn next_pair(&mut self, po: &PartialOrder) -> (usize, usize) {
        self.close_pair(po).unwrap_or_else(|| distant_pair(po))
    }

    /// Best pair with `|Δ(i) - Δ(j)| <= 1`, if there is one.
    fn close_pair(&mut self, po: &PartialOrder) -> Option<(usize, usize)> {
        let n = po.len();
        let desc = po.descendant_counts();
        let anc = po.ancestor_counts();
        // Δ + n - 1 lies in 0..2n-1
        let bucket = |i: usize| (desc[i] + n as u32 - 1 - anc[i]) as usize;
        let info = |i: usize| desc[i] + anc[i];

        // two smallest I per Δ bucket
        let PairPicker {
            min1,
            min2,
            first,
            second,
        } = self;
        for buf in [&mut *min1, &mut *min2, &mut *first, &mut *second] {
            buf.clear();
            buf.resize(2 * n, NONE);
        }
        for i in 0..n {
            let (b, v) = (bucket(i), info(i));
            if v < min1[b] {
                min2[b] = min1[b];
                min1[b] = v;
            } else if v < min2[b] {
                min2[b] = v;
            }
        }

        let same = min2.iter().copied().min().unwrap_or(NONE);
        let (gap, bound) = if same != NONE {
            (0, same)
        } else {
            let adjacent = (0..2 * n - 1)
                .filter(|&b| min1[b] != NONE && min1[b + 1] != NONE)
                .map(|b| min1[b].max(min1[b + 1]))
                .min()?;
            (1, adjacent)
        };

        // smallest two indices per bucket among elements with I <= bound
        for i in 0..n {
            if info(i) <= bound {
                let b = bucket(i);
                if first[b] == NONE {
                    first[b] = i as u32;
                } else if second[b] == NONE {
                    second[b] = i as u32;
                }
            }
        }

        let mut best: Option<(u32, u32)> = None;
        let mut offer = |pair: (u32, u32)| {
            if best.is_none_or(|b| pair < b) {
                best = Some(pair);
            }
        };
        if gap == 0 {
            for b in 0..2 * n {
                if second[b] != NONE {
                    offer((first[b], second[b]));
                }
            }
        } else {
            for b in 0..2 * n - 1 {
                let (x, y) = (first[b], first[b + 1]);
                if x != NONE && y != NONE {
                    offer((x.min(y), x.max(y)));
                }
            }
        }
        best.map(|(i, j)| (i as usize, j as usize))
    }
}

/// Exhaustive search, used when every incomparable pair has `|ΔΔ| >= 2`.
fn distant_pair(po: &PartialOrder) -> (usize, usize) {
    let n = po.len();
    let delta = |i: usize| po.descendants(i) as i64 - po.ancestors(i) as i64;
    let info = |i: usize| po.descendants(i) + po.ancestors(i);
    let mut best: Option<((u64, u32), (usize, usize))> = None;
    for i in 0..n {
        for j in i + 1..n {
            if !po.incomparable(i, j) {
                continue;
            }
            let key = (delta(i).abs_diff(delta(j)), info(i).max(info(j)));
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, (i, j)));
            }
        }
    }
    best.expect("a non-total order has an incomparable pair").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            corsort_next_pair(&PartialOrder::new(2).unwrap()),
            Ok((0, 1))
        );
        assert_eq!(
            corsort_next_pair(&PartialOrder::new(3).unwrap()),
            Ok((0, 1))
        );
        let mut po = PartialOrder::new(4).unwrap();
        po.record(0, 1).unwrap();
        assert_eq!(corsort_next_pair(&po), Ok((2, 3)));
    }

    #[test]
    fn total_order_has_no_next_pair() {
        let mut po = PartialOrder::new(2).unwrap();
        po.record(1, 0).unwrap();
        assert_eq!(corsort_next_pair(&po), Err(Error::AlreadyTotal));
    }
}
