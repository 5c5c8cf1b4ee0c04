use std::cmp::Ordering;
use std::ops::ControlFlow;

use anysort::metrics::{max_tau, quantile, relative_overhead, QuantileBands};
use anysort::sorters::{count_comparisons, run_with};
use anysort::{Algorithm, Error, Estimator, HiddenList, SorterSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Mode};
use crate::Result;

/// A uniformly random permutation of `0..n`, fully determined by
/// `(seed, trial)`.
///
/// The generator is ChaCha8 seeded with `seed` (via `seed_from_u64`) and set
/// to stream `trial`. Fisher–Yates runs from the last position down, drawing
/// `j` in `0..=i` as a `u64`, so the output is identical on every platform.
pub fn generate_permutation(seed: u64, trial: u64, n: usize) -> Result<HiddenList<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut values: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i as u64) as usize;
        values.swap(i, j);
    }
    Ok(HiddenList::new(values)?)
}

/// One aggregated value. `step` is `None` in termination mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResultRow {
    pub algorithm: Algorithm,
    pub estimator: Estimator,
    pub n: usize,
    pub step: Option<usize>,
    pub quantile: f64,
    pub value: f64,
}

impl ResultRow {
    pub fn spec(&self) -> SorterSpec {
        SorterSpec::new(self.algorithm, self.estimator).expect("rows hold valid specs")
    }

    /// Order used for every report: by name, then size, step and level.
    pub fn key_cmp(&self, other: &Self) -> Ordering {
        (
            self.algorithm.name(),
            self.estimator.name(),
            self.n,
            self.step,
        )
            .cmp(&(
                other.algorithm.name(),
                other.estimator.name(),
                other.n,
                other.step,
            ))
            .then(self.quantile.total_cmp(&other.quantile))
    }
}

pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(ResultRow::key_cmp);
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    match cfg.mode {
        Mode::Termination => run_termination_experiment(cfg),
        Mode::Profile => run_profile_experiment(cfg),
    }
}

/// Comparison counts per trial, for every `(spec, n)` in `cfg`.
pub fn termination_counts(cfg: &ExperimentConfig) -> Result<Vec<(SorterSpec, usize, Vec<usize>)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &n in &cfg.sizes {
        for &spec in &cfg.algorithms {
            let counts = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|t| {
                    Ok(count_comparisons(
                        spec,
                        &generate_permutation(cfg.seed, t, n)?,
                    )?)
                })
                .collect::<Result<Vec<usize>>>()?;
            out.push((spec, n, counts));
        }
    }
    Ok(out)
}

/// Quantiles of the relative overhead (percent) per `(spec, n)`.
pub fn run_termination_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for (spec, n, counts) in termination_counts(cfg)? {
        let mut overheads: Vec<f64> = counts.iter().map(|&c| relative_overhead(c, n)).collect();
        overheads.sort_by(f64::total_cmp);
        for &level in &cfg.levels {
            rows.push(ResultRow {
                algorithm: spec.algorithm(),
                estimator: spec.estimator(),
                n,
                step: None,
                quantile: level,
                value: quantile(&overheads, level),
            });
        }
    }
    sort_rows(&mut rows);
    Ok(rows)
}

/// Per-step quantile bands of one `(spec, n)` pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSummary {
    pub spec: SorterSpec,
    pub n: usize,
    /// Comparisons used by each trial, in trial order.
    pub terminations: Vec<usize>,
    /// Normalized distance quantiles; row `k - 1` is step `k`.
    pub bands: QuantileBands,
}

/// Distance after every comparison of one run.
fn trace_distances(spec: SorterSpec, input: &HiddenList<usize>) -> Result<Vec<u32>> {
    let mut taus = Vec::new();
    run_with(spec, input, |snap| {
        taus.push(snap.tau() as u32);
        ControlFlow::Continue(())
    })?;
    Ok(taus)
}

/// Quantile bands of normalized profiles, zero-padded to the longest one.
fn bands_of(profiles: &[Vec<u32>], n: usize, levels: &[f64]) -> QuantileBands {
    let scale = max_tau(n).max(1) as f64;
    let len = profiles.iter().map(Vec::len).max().unwrap_or(0);
    let mut column = vec![0u32; profiles.len()];
    let mut normalized = vec![0f64; profiles.len()];
    let values = (0..len)
        .map(|step| {
            for (slot, p) in column.iter_mut().zip(profiles) {
                *slot = p.get(step).copied().unwrap_or(0);
            }
            column.sort_unstable();
            for (x, &c) in normalized.iter_mut().zip(&column) {
                *x = c as f64 / scale;
            }
            levels.iter().map(|&l| quantile(&normalized, l)).collect()
        })
        .collect();
    QuantileBands {
        levels: levels.to_vec(),
        values,
    }
}

/// Runs every `(spec, n)` of `cfg` with per-step distances.
///
/// All bands of one size share one length: `cfg.horizon` if set, otherwise
/// the longest run of any algorithm at that size. Finished runs count as
/// distance 0.
pub fn profile_experiment(cfg: &ExperimentConfig) -> Result<Vec<ProfileSummary>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &n in &cfg.sizes {
        if max_tau(n) > u32::MAX as u64 {
            return Err(Error::TooLarge { n, limit: 92_682 }.into());
        }
        let first = out.len();
        for &spec in &cfg.algorithms {
            let profiles = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|t| trace_distances(spec, &generate_permutation(cfg.seed, t, n)?))
                .collect::<Result<Vec<Vec<u32>>>>()?;
            out.push(ProfileSummary {
                spec,
                n,
                terminations: profiles.iter().map(Vec::len).collect(),
                bands: bands_of(&profiles, n, &cfg.levels),
            });
        }
        let horizon = cfg.horizon.unwrap_or_else(|| {
            out[first..]
                .iter()
                .flat_map(|s| s.terminations.iter().copied())
                .max()
                .unwrap_or(0)
        });
        for summary in &mut out[first..] {
            summary
                .bands
                .values
                .resize(horizon, vec![0.0; cfg.levels.len()]);
        }
    }
    Ok(out)
}

pub fn run_profile_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for summary in profile_experiment(cfg)? {
        for (k, row) in summary.bands.values.iter().enumerate() {
            for (&level, &value) in summary.bands.levels.iter().zip(row) {
                rows.push(ResultRow {
                    algorithm: summary.spec.algorithm(),
                    estimator: summary.spec.estimator(),
                    n: summary.n,
                    step: Some(k + 1),
                    quantile: level,
                    value,
                });
            }
        }
    }
    sort_rows(&mut rows);
    Ok(rows)
}
