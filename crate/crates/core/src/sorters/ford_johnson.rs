//! Merge-insertion (Ford–Johnson) sort.
//!
//! 1. Compare elements in pairs; the larger of each pair is a *winner*.
//! 2. Sort the winners recursively: `a_1 < a_2 < ... < a_m`, each `a_i`
//!    with its loser `b_i < a_i`. An odd element out becomes `b_{m+1}`.
//! 3. Start the main chain as `b_1, a_1, ..., a_m` and binary-insert the
//!    other losers group by group: `b_3, b_2`, then `b_5, b_4`, then
//!    `b_11 .. b_6`, ... with group ends at the Jacobsthal-like numbers
//!    `t_k = (2^(k+1) + (-1)^k) / 3`. Each `b_i` is searched only among
//!    chain elements before its partner `a_i`.

use super::session::{Session, Step};

pub(super) fn sort<K: Ord>(s: &mut Session<'_, '_, K>) -> Step<Vec<usize>> {
    let items: Vec<usize> = (0..s.len()).collect();
    merge_insertion(s, items)
}

fn merge_insertion<K: Ord>(s: &mut Session<'_, '_, K>, items: Vec<usize>) -> Step<Vec<usize>> {
    if items.len() < 2 {
        return Ok(items);
    }
    let n_pairs = items.len() / 2;
    let straggler = (items.len() % 2 == 1).then(|| items[items.len() - 1]);

    // partner[w] = loser paired with winner w
    let mut partner = vec![usize::MAX; s.len()];
    let mut winners = Vec::with_capacity(n_pairs);
    for pair in items.chunks_exact(2) {
        let (x, y) = (pair[0], pair[1]);
        let (lo, hi) = if s.less(x, y)? { (x, y) } else { (y, x) };
        partner[hi] = lo;
        winners.push(hi);
    }

    let winners = merge_insertion(s, winners)?;
    // losers[i] = b_{i+1}
    let mut losers: Vec<usize> = winners.iter().map(|&w| partner[w]).collect();
    losers.extend(straggler);

    let mut chain = Vec::with_capacity(items.len());
    chain.push(losers[0]);
    chain.extend_from_slice(&winners);
    // winner_pos[i] = position of a_{i+1} in the chain
    let mut winner_pos: Vec<usize> = (1..=winners.len()).collect();

    let total = losers.len();
    let (mut done, mut prev_t, mut t) = (1, 1usize, 1usize);
    while done < total {
        (prev_t, t) = (t, t + 2 * prev_t);
        let group_end = t.min(total);
        for b in (done + 1..=group_end).rev() {
            let x = losers[b - 1];
            let bound = winner_pos.get(b - 1).copied().unwrap_or(chain.len());
            let at = binary_insert_position(s, &chain[..bound], x)?;
            chain.insert(at, x);
            for p in winner_pos.iter_mut().filter(|p| **p >= at) {
                *p += 1;
            }
        }
        done = group_end;
    }
    Ok(chain)
}

fn binary_insert_position<K: Ord>(
    s: &mut Session<'_, '_, K>,
    sorted: &[usize],
    x: usize,
) -> Step<usize> {
    let (mut lo, mut hi) = (0, sorted.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if s.less(x, sorted[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}
