use std::collections::VecDeque;

use super::quicksort::partition;
use super::session::{Session, Step};

/// Quicksort splitting every segment at its exact median, segments refined
/// in FIFO (breadth-first) order.
///
/// The median is located by quickselect with first-element pivots; its
/// comparisons are the only ones made, since after selection the segment is
/// already partitioned around the median.
pub(super) fn sort<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    let mut queue = VecDeque::from([(0, s.len())]);
    while let Some((lo, hi)) = queue.pop_front() {
        if hi - lo < 2 {
            continue;
        }
        let median = lo + (hi - lo - 1) / 2;
        select(s, lo, hi, median)?;
        queue.push_back((lo, median));
        queue.push_back((median + 1, hi));
    }
    Ok(s.work.to_vec())
}

/// Rearranges `work[lo..hi]` so that position `target` holds its order
/// statistic, with smaller elements before and larger after.
fn select<K: Ord>(s: &mut Session<'_, '_, K>, lo: usize, hi: usize, target: usize) -> Step<()> {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1 {
        let p = partition(s, lo, hi)?;
        match p.cmp(&target) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Greater => hi = p,
            std::cmp::Ordering::Less => lo = p + 1,
        }
    }
    Ok(())
}
