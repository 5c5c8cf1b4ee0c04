//! Estimators: turn a partial order into a guessed total order.
//!
//! The cheap estimators score each element from its descendant and ancestor
//! counts and sort by score. The exact average-height estimator needs the
//! full set of linear extensions and only exists to validate the cheap ones
//! on small inputs.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::PartialOrder;

/// Largest order accepted by the exact (enumerating) estimators.
pub const EXACT_MAX_ELEMENTS: usize = 12;

/// Default cap on the number of linear extensions enumerated at once.
pub const DEFAULT_EXTENSION_BUDGET: usize = 10_000_000;

/// A permutation of `0..n`: position `p` holds the index believed to be the
/// `p`-th smallest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Estimate(Vec<usize>);

impl Estimate {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        if !is_permutation(&order) {
            return Err(Error::NotPermutation(order.len()));
        }
        Ok(Self(order))
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&order));
        Self(order)
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Whether the estimate is compatible with every relation of `po`.
    pub fn extends(&self, po: &PartialOrder) -> bool {
        let mut pos = vec![0; self.0.len()];
        for (p, &i) in self.0.iter().enumerate() {
            pos[i] = p;
        }
        (0..po.len()).all(|i| po.above(i).all(|j| pos[i] <= pos[j]))
    }
}

impl AsRef<[usize]> for Estimate {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

pub fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    order
        .iter()
        .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
}

/// Exact non-negative fraction, ordered by cross-multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Self { num, den }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One score per element index.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreVector<T>(pub Vec<T>);

impl<T> ScoreVector<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

/// `ρ(i) = d(i) / (d(i) + a(i))`.
pub fn rho_scores(po: &PartialOrder) -> ScoreVector<Ratio> {
    ScoreVector(
        (0..po.len())
            .map(|i| {
                let d = po.descendants(i) as u64;
                Ratio::new(d, d + po.ancestors(i) as u64)
            })
            .collect(),
    )
}

/// `Δ(i) = d(i) - a(i)`.
pub fn delta_scores(po: &PartialOrder) -> ScoreVector<i64> {
    ScoreVector(
        (0..po.len())
            .map(|i| po.descendants(i) as i64 - po.ancestors(i) as i64)
            .collect(),
    )
}

/// `I(i) = d(i) + a(i)`: how much is known about element `i`.
pub fn info_scores(po: &PartialOrder) -> ScoreVector<i64> {
    ScoreVector(
        (0..po.len())
            .map(|i| po.descendants(i) as i64 + po.ancestors(i) as i64)
            .collect(),
    )
}

/// Indices sorted by ascending score, ties broken by ascending index.
pub fn estimate_from_scores<T: PartialOrd>(scores: &ScoreVector<T>) -> Estimate {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // stable: equal scores keep index order
    order.sort_by(|&i, &j| {
        scores.0[i]
            .partial_cmp(&scores.0[j])
            .unwrap_or(Ordering::Equal)
    });
    Estimate(order)
}

/// Every linear extension of `po`, in lexicographic order.
pub fn linear_extensions(po: &PartialOrder) -> Result<Vec<Estimate>> {
    linear_extensions_with_budget(po, DEFAULT_EXTENSION_BUDGET)
}

/// Like [`linear_extensions`], refusing once more than `budget` extensions exist.
pub fn linear_extensions_with_budget(po: &PartialOrder, budget: usize) -> Result<Vec<Estimate>> {
    let n = po.len();
    if n > EXACT_MAX_ELEMENTS {
        return Err(Error::TooLarge {
            n,
            limit: EXACT_MAX_ELEMENTS,
        });
    }
    let preds = predecessor_masks(po);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend(&preds, 0, &mut prefix, &mut out, budget)?;
    Ok(out)
}

fn extend(
    preds: &[u32],
    placed: u32,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Estimate>,
    budget: usize,
) -> Result<()> {
    let n = preds.len();
    if prefix.len() == n {
        if out.len() == budget {
            return Err(Error::ExtensionBudget(budget));
        }
        out.push(Estimate(prefix.clone()));
        return Ok(());
    }
    for i in 0..n {
        if placed >> i & 1 == 0 && preds[i] & !placed == 0 {
            prefix.push(i);
            extend(preds, placed | 1 << i, prefix, out, budget)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// Bit mask of strict predecessors for each element.
fn predecessor_masks(po: &PartialOrder) -> Vec<u32> {
    (0..po.len())
        .map(|i| {
            po.below(i)
                .filter(|&j| j != i)
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect()
}

/// Mean 0-based position of each element over all linear extensions.
///
/// Counts extensions by dynamic programming over down-sets instead of
/// enumerating them, so it stays cheap up to [`EXACT_MAX_ELEMENTS`].
pub fn exact_average_heights(po: &PartialOrder) -> Result<ScoreVector<f64>> {
    let n = po.len();
    if n > EXACT_MAX_ELEMENTS {
        return Err(Error::TooLarge {
            n,
            limit: EXACT_MAX_ELEMENTS,
        });
    }
    let preds = predecessor_masks(po);
    let full = (1u32 << n) - 1;
    let states = 1usize << n;
    let is_down_set = |s: u32| (0..n).all(|i| s >> i & 1 == 0 || preds[i] & !s == 0);

    // prefix[s]: orderings of down-set s placed first
    let mut prefix = vec![0u128; states];
    prefix[0] = 1;
    for s in 0..states as u32 {
        if prefix[s as usize] == 0 {
            continue;
        }
        for i in 0..n {
            if s >> i & 1 == 0 && preds[i] & !s == 0 {
                prefix[(s | 1 << i) as usize] += prefix[s as usize];
            }
        }
    }
    // suffix[s]: orderings of the complement once s is placed
    let mut suffix = vec![0u128; states];
    suffix[full as usize] = 1;
    for s in (0..states as u32).rev() {
        if s == full || !is_down_set(s) {
            continue;
        }
        let mut total = 0;
        for i in 0..n {
            if s >> i & 1 == 0 && preds[i] & !s == 0 {
                total += suffix[(s | 1 << i) as usize];
            }
        }
        suffix[s as usize] = total;
    }

    let count = prefix[full as usize] as f64;
    let mut height_sums = vec![0u128; n];
    for s in 0..states as u32 {
        let ways = prefix[s as usize];
        if ways == 0 {
            continue;
        }
        let position = s.count_ones() as u128;
        for (i, sum) in height_sums.iter_mut().enumerate() {
            if s >> i & 1 == 0 && preds[i] & !s == 0 {
                *sum += ways * suffix[(s | 1 << i) as usize] * position;
            }
        }
    }
    Ok(ScoreVector(
        height_sums.into_iter().map(|h| h as f64 / count).collect(),
    ))
}

/// Integer key ordering elements exactly like `ρ` with index tie-break.
///
/// `d / (d + a)` is scaled by 2^40 and floored; two distinct fractions with
/// denominators at most 2^20 differ by at least 2^-40 and so never collide.
/// The low 20 bits carry the index.
#[inline]
pub(crate) fn rho_key(d: u32, a: u32, index: usize) -> u64 {
    let scaled = ((d as u64) << 40) / (d as u64 + a as u64);
    scaled << 20 | index as u64
}

#[inline]
pub(crate) fn delta_key(d: u32, a: u32, n: usize, index: usize) -> u64 {
    let shifted = (d as u64 + n as u64) - a as u64;
    shifted << 22 | index as u64
}

/// Element index stored in the low bits of a packed key.
#[inline]
pub(crate) fn key_index(key: u64) -> usize {
    (key & ((1 << 20) - 1)) as usize
}

/// Largest order supported by the packed estimator keys.
pub const KEY_MAX_ELEMENTS: usize = (1 << 20) - 2;
