use super::session::{Session, Step};

/// Top-down mergesort, left half (`⌈n/2⌉` elements) first.
pub(super) fn sort_dfs<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    fn recurse<K: Ord>(s: &mut Session<'_, '_, K>, lo: usize, hi: usize) -> Step<()> {
        if hi - lo < 2 {
            return Ok(());
        }
        let mid = lo + (hi - lo).div_ceil(2);
        recurse(s, lo, mid)?;
        recurse(s, mid, hi)?;
        merge(s, lo, mid, hi)
    }
    let n = s.len();
    recurse(s, 0, n)?;
    Ok(s.work.to_vec())
}

/// Bottom-up mergesort: each level merges neighbouring runs left to right;
/// an odd run out is carried to the next level untouched.
pub(super) fn sort_bfs<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    let n = s.len();
    let mut bounds: Vec<usize> = (0..=n).collect();
    while bounds.len() > 2 {
        let mut next = Vec::with_capacity(bounds.len() / 2 + 2);
        let mut k = 0;
        while k + 2 < bounds.len() {
            merge(s, bounds[k], bounds[k + 1], bounds[k + 2])?;
            next.push(bounds[k]);
            k += 2;
        }
        next.extend_from_slice(&bounds[k..]);
        bounds = next;
    }
    Ok(s.work.to_vec())
}

/// Merges sorted `work[lo..mid]` and `work[mid..hi]` in place.
///
/// Between comparisons the segment reads: merged prefix, rest of the left
/// run, rest of the right run.
fn merge<K: Ord>(s: &mut Session<'_, '_, K>, lo: usize, mid: usize, hi: usize) -> Step<()> {
    let (mut left, mut right) = (lo, mid);
    while left < right && right < hi {
        let (l, r) = (s.work[left], s.work[right]);
        if s.less(r, l)? {
            s.work.move_item(right, left);
            right += 1;
        }
        left += 1;
    }
    Ok(())
}
