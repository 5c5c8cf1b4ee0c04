use super::session::{Session, Step};

/// In-place max-heapsort.
///
/// The natural estimate reads the heap region backwards (largest first
/// becomes last) followed by the already extracted, sorted suffix.
pub(super) fn sort<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    let n = s.len();
    s.work.set_heap_len(n);
    for root in (0..n / 2).rev() {
        sift_down(s, root, n)?;
    }
    for end in (1..n).rev() {
        s.work.swap(0, end);
        s.work.set_heap_len(end);
        sift_down(s, 0, end)?;
    }
    s.work.clear_heap();
    Ok(s.work.to_vec())
}

/// Two comparisons per level: pick the larger child, then test it against
/// the parent.
fn sift_down<K: Ord>(s: &mut Session<'_, '_, K>, mut root: usize, end: usize) -> Step<()> {
    loop {
        let mut child = 2 * root + 1;
        if child >= end {
            return Ok(());
        }
        if child + 1 < end && s.less(s.work[child], s.work[child + 1])? {
            child += 1;
        }
        if s.less(s.work[root], s.work[child])? {
            s.work.swap(root, child);
            root = child;
        } else {
            return Ok(());
        }
    }
}
