use super::session::{Session, Step};

/// Quicksort on the working list, first element of each segment as pivot.
///
/// During a partition the segment reads `[smaller.., pivot, unseen.., larger..]`:
/// each comparison moves the examined element either just left of the pivot
/// or to the end of the segment, so the list is a valid estimate after every
/// step. Left segments are sorted before right ones.
pub(super) fn sort<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    let mut stack = vec![(0, s.len())];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let p = partition(s, lo, hi)?;
        stack.push((p + 1, hi));
        stack.push((lo, p));
    }
    Ok(s.work.to_vec())
}

/// Stable partition of `work[lo..hi]` around `work[lo]`; returns the pivot's
/// final position. Outcomes implied by earlier comparisons are not asked again.
pub(super) fn partition<K: Ord>(s: &mut Session<'_, '_, K>, lo: usize, hi: usize) -> Step<usize> {
    let mut pivot_at = lo;
    let mut unseen_end = hi;
    while pivot_at + 1 < unseen_end {
        let candidate = s.work[pivot_at + 1];
        let pivot = s.work[pivot_at];
        if s.less_unless_known(candidate, pivot)? {
            s.work.swap(pivot_at, pivot_at + 1);
            pivot_at += 1;
        } else {
            s.work.move_item(pivot_at + 1, hi - 1);
            unseen_end -= 1;
        }
    }
    Ok(pivot_at)
}
