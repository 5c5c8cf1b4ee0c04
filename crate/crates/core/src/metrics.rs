//! Quality and cost metrics for anytime sorts.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::estimators::is_permutation;
use crate::sorters::ComparisonTrace;

/// Quantile levels (as fractions) plotted for every experiment.
pub const DEFAULT_LEVELS: [f64; 5] = [0.025, 0.25, 0.5, 0.75, 0.975];

/// Kendall-tau distance between `order` and the identity permutation:
/// the number of positions `p < q` with `order[p] > order[q]`.
pub fn kendall_tau(order: &[usize]) -> Result<u64> {
    if !is_permutation(order) {
        return Err(Error::NotPermutation(order.len()));
    }
    Ok(permutation_inversions(order, &mut Vec::new()))
}

/// `kendall_tau` divided by `n(n-1)/2`.
pub fn normalized_tau(order: &[usize]) -> Result<f64> {
    let n = order.len();
    if n < 2 {
        return Err(Error::TooShort(n));
    }
    Ok(kendall_tau(order)? as f64 / max_tau(n) as f64)
}

pub fn max_tau(n: usize) -> u64 {
    (n as u64 * (n as u64).saturating_sub(1)) / 2
}

/// Inversion count of any sequence of distinct keys, by merge counting.
pub fn count_inversions<T: Ord + Copy>(keys: &[T]) -> u64 {
    let mut buf = keys.to_vec();
    let mut scratch = keys.to_vec();
    sort_count(&mut buf, &mut scratch)
}

/// Inversions of a permutation of `0..n`, counted with a Fenwick tree held
/// in `tree`.
pub(crate) fn permutation_inversions(perm: &[usize], tree: &mut Vec<u32>) -> u64 {
    let n = perm.len();
    tree.clear();
    tree.resize(n + 1, 0);
    let mut inv = 0;
    for (seen, &r) in perm.iter().enumerate() {
        let mut at_most = 0;
        let mut i = r + 1;
        while i > 0 {
            at_most += tree[i];
            i &= i - 1;
        }
        inv += (seen as u32 - at_most) as u64;
        let mut i = r + 1;
        while i <= n {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    inv
}

fn sort_count<T: Ord + Copy>(v: &mut [T], scratch: &mut [T]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    if n <= 16 {
        // insertion sort: each shift is one inversion
        let mut inv = 0;
        for i in 1..n {
            let x = v[i];
            let mut j = i;
            while j > 0 && v[j - 1] > x {
                v[j] = v[j - 1];
                j -= 1;
            }
            inv += (i - j) as u64;
            v[j] = x;
        }
        return inv;
    }
    let mid = n / 2;
    let mut inv = {
        let (left, right) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        sort_count(left, sl) + sort_count(right, sr)
    };
    if v[mid - 1] <= v[mid] {
        return inv;
    }
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            scratch[k] = v[j];
            inv += (mid - i) as u64;
            j += 1;
        } else {
            scratch[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    inv
}

/// Information-theoretic lower bound on comparisons,
/// `n log2 n - n / ln 2 + log2(2πn) / 2`.
pub fn itlb(n: usize) -> f64 {
    let n = n as f64;
    n * n.log2() - n / LN_2 + (2.0 * PI * n).log2() / 2.0
}

/// Percentage of comparisons above [`itlb`]; negative below it.
pub fn relative_overhead(comparisons: usize, n: usize) -> f64 {
    let bound = itlb(n);
    100.0 * (comparisons as f64 - bound) / bound
}

/// `k -> τ(X_k)` for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerformanceProfile {
    pub n: usize,
    /// Entry `k - 1` is the distance after `k` comparisons.
    pub tau_by_step: Vec<u64>,
    pub total_comparisons: usize,
}

impl PerformanceProfile {
    pub fn normalized(&self) -> Vec<f64> {
        let scale = max_tau(self.n).max(1) as f64;
        self.tau_by_step.iter().map(|&t| t as f64 / scale).collect()
    }
}

/// Per-step distance of a recorded trace, padded with zeros up to `horizon`.
///
/// Steps after termination hold the final (sorted) estimate. The profile is
/// never truncated: a horizon shorter than the run is ignored.
pub fn profile(trace: &ComparisonTrace, horizon: usize) -> PerformanceProfile {
    let n = trace.final_order.len();
    let mut rank = vec![0; n];
    for (p, &i) in trace.final_order.as_slice().iter().enumerate() {
        rank[i] = p;
    }
    let total = trace.total_comparisons();
    let mut tau_by_step: Vec<u64> = trace
        .estimates
        .iter()
        .map(|est| {
            let ranks: Vec<usize> = est.as_slice().iter().map(|&i| rank[i]).collect();
            count_inversions(&ranks)
        })
        .collect();
    tau_by_step.resize(horizon.max(total), 0);
    PerformanceProfile {
        n,
        tau_by_step,
        total_comparisons: total,
    }
}

/// Empirical quantile of ascending `sorted` data at fraction `p`.
///
/// Linear interpolation between order statistics: with `h = (m - 1) p`, the
/// result is `x[⌊h⌋] + (h - ⌊h⌋)(x[⌊h⌋ + 1] - x[⌊h⌋])`.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-step quantiles across a set of equally long profiles.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantileBands {
    pub levels: Vec<f64>,
    /// `values[step][level]`.
    pub values: Vec<Vec<f64>>,
}

impl QuantileBands {
    pub fn level(&self, index: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[index]).collect()
    }

    /// The series at the level closest to `p`.
    pub fn at(&self, p: f64) -> Option<Vec<f64>> {
        let index = self.levels.iter().position(|&l| (l - p).abs() < 1e-12)?;
        Some(self.level(index))
    }
}

/// Quantile bands of `profiles` (each indexed by step) at the given levels.
///
/// Profiles shorter than the longest one are padded with zeros, following
/// the convention that a finished run keeps reporting its sorted result.
pub fn quantile_bands<P: AsRef<[f64]>>(profiles: &[P], levels: &[f64]) -> Result<QuantileBands> {
    if profiles.is_empty() {
        return Err(Error::EmptyInput);
    }
    let horizon = profiles.iter().map(|p| p.as_ref().len()).max().unwrap_or(0);
    let mut column = Vec::with_capacity(profiles.len());
    let values = (0..horizon)
        .map(|step| {
            column.clear();
            column.extend(
                profiles
                    .iter()
                    .map(|p| p.as_ref().get(step).copied().unwrap_or(0.0)),
            );
            column.sort_by(f64::total_cmp);
            levels.iter().map(|&l| quantile(&column, l)).collect()
        })
        .collect();
    Ok(QuantileBands {
        levels: levels.to_vec(),
        values,
    })
}
