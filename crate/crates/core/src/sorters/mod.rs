//! Anytime sorting algorithms behind one stepwise driver.
//!
//! Every algorithm talks to the hidden values only through a comparison
//! oracle. Each comparison is one step, and after each step the driver can
//! publish an estimate of the sorted order: either the algorithm's own
//! working list (`natural`) or a score-based estimate computed from the
//! partial order of all outcomes so far (`rho`, `delta`).
//!
//! Observers passed to [`run_with`] see every step and may stop the run by
//! returning [`ControlFlow::Break`].

mod asort;
mod corsort;
mod ford_johnson;
mod heapsort;
mod mergesort;
mod quicksort;
mod session;
mod worklist;

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimators::{Estimate, KEY_MAX_ELEMENTS};
use session::{Halt, Session};

pub use corsort::corsort_next_pair;
pub use session::Snapshot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Corsort,
    Quicksort,
    Asort,
    MergesortDfs,
    MergesortBfs,
    Heapsort,
    FordJohnson,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Corsort,
        Algorithm::Quicksort,
        Algorithm::Asort,
        Algorithm::MergesortDfs,
        Algorithm::MergesortBfs,
        Algorithm::Heapsort,
        Algorithm::FordJohnson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Corsort => "corsort",
            Algorithm::Quicksort => "quicksort",
            Algorithm::Asort => "asort",
            Algorithm::MergesortDfs => "mergesort_dfs",
            Algorithm::MergesortBfs => "mergesort_bfs",
            Algorithm::Heapsort => "heapsort",
            Algorithm::FordJohnson => "ford_johnson",
        }
    }

    /// Whether the algorithm keeps a working list usable as an estimate.
    pub fn has_natural_estimate(self) -> bool {
        matches!(
            self,
            Algorithm::Quicksort | Algorithm::MergesortDfs | Algorithm::Heapsort
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Estimator {
    /// The algorithm's current working list.
    Natural,
    /// Sort by `d / (d + a)`.
    Rho,
    /// Sort by `d - a`.
    Delta,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Natural => "natural",
            Estimator::Rho => "rho",
            Estimator::Delta => "delta",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(Estimator::Natural),
            "rho" => Ok(Estimator::Rho),
            "delta" => Ok(Estimator::Delta),
            _ => Err(Error::InvalidSpec(format!("unknown estimator `{s}`"))),
        }
    }
}

/// An algorithm paired with the estimator used for its intermediate results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SorterSpec {
    algorithm: Algorithm,
    estimator: Estimator,
}

impl SorterSpec {
    pub fn new(algorithm: Algorithm, estimator: Estimator) -> Result<Self> {
        if estimator == Estimator::Natural && !algorithm.has_natural_estimate() {
            return Err(Error::InvalidSpec(format!(
                "{algorithm} has no natural estimate"
            )));
        }
        Ok(Self {
            algorithm,
            estimator,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn estimator(&self) -> Estimator {
        self.estimator
    }
}

impl fmt::Display for SorterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.algorithm, self.estimator)
    }
}

/// Parses `algorithm:estimator`, e.g. `corsort:rho`.
impl FromStr for SorterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (algo, est) = s.split_once(':').ok_or_else(|| {
            Error::InvalidSpec(format!("expected algorithm:estimator, got `{s}`"))
        })?;
        SorterSpec::new(algo.trim().parse()?, est.trim().parse()?)
    }
}

/// The list to sort. Values must be pairwise distinct; a tie is reported as
/// an error when the two values are compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiddenList<K>(Vec<K>);

impl<K: Ord> HiddenList<K> {
    pub fn new(values: Vec<K>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if values.len() > KEY_MAX_ELEMENTS {
            return Err(Error::TooLarge {
                n: values.len(),
                limit: KEY_MAX_ELEMENTS,
            });
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[K] {
        &self.0
    }
}

/// Outcome of one comparison: `less` is true iff `values[i] < values[j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Comparison {
    pub i: usize,
    pub j: usize,
    pub less: bool,
}

impl Comparison {
    /// The pair as `(smaller, larger)`.
    pub fn ordered(&self) -> (usize, usize) {
        if self.less {
            (self.i, self.j)
        } else {
            (self.j, self.i)
        }
    }
}

/// Full record of one run: every comparison and the estimate after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonTrace {
    pub steps: Vec<Comparison>,
    pub estimates: Vec<Estimate>,
    pub final_order: Estimate,
}

impl ComparisonTrace {
    pub fn total_comparisons(&self) -> usize {
        self.steps.len()
    }

    /// `X_k` for any `k >= 1`; past termination this is the final order.
    pub fn estimate_at(&self, k: usize) -> &Estimate {
        assert!(k >= 1, "steps are 1-based");
        self.estimates.get(k - 1).unwrap_or(&self.final_order)
    }
}

/// Result of a streamed run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub comparisons: usize,
    /// `None` when the observer interrupted the run.
    pub final_order: Option<Estimate>,
}

/// Runs `spec` on `input`, keeping every comparison and estimate.
pub fn run<K: Ord>(spec: SorterSpec, input: &HiddenList<K>) -> Result<ComparisonTrace> {
    let mut steps = Vec::new();
    let mut estimates = Vec::new();
    let summary = run_with(spec, input, |snap| {
        steps.push(snap.comparison());
        estimates.push(Estimate::from_vec_unchecked(snap.estimate().to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(ComparisonTrace {
        steps,
        estimates,
        final_order: summary.final_order.expect("never interrupted"),
    })
}

/// Runs `spec` on `input`, handing each step to `observer`.
pub fn run_with<K, F>(
    spec: SorterSpec,
    input: &HiddenList<K>,
    mut observer: F,
) -> Result<RunSummary>
where
    K: Ord,
    F: FnMut(&mut Snapshot<'_>) -> ControlFlow<()>,
{
    execute(spec, input.values(), Some(&mut observer))
}

/// Number of comparisons `spec` needs to sort `input`; no estimates are built.
pub fn count_comparisons<K: Ord>(spec: SorterSpec, input: &HiddenList<K>) -> Result<usize> {
    Ok(execute(spec, input.values(), None)?.comparisons)
}

fn execute<K: Ord>(
    spec: SorterSpec,
    values: &[K],
    observer: Option<&mut session::Observer<'_>>,
) -> Result<RunSummary> {
    let keep_poset = matches!(spec.algorithm, Algorithm::Corsort | Algorithm::Asort);
    let mut s = Session::new(values, spec.estimator, keep_poset, observer);
    let outcome = match spec.algorithm {
        Algorithm::Corsort => corsort::sort(&mut s),
        Algorithm::Quicksort => quicksort::sort(&mut s),
        Algorithm::Asort => asort::sort(&mut s),
        Algorithm::MergesortDfs => mergesort::sort_dfs(&mut s),
        Algorithm::MergesortBfs => mergesort::sort_bfs(&mut s),
        Algorithm::Heapsort => heapsort::sort(&mut s),
        Algorithm::FordJohnson => ford_johnson::sort(&mut s),
    }
    .and_then(|order| s.finish(order));
    match outcome {
        Ok(order) => Ok(RunSummary {
            comparisons: s.comparisons(),
            final_order: Some(Estimate::from_vec_unchecked(order)),
        }),
        Err(Halt::Interrupted) => Ok(RunSummary {
            comparisons: s.comparisons(),
            final_order: None,
        }),
        Err(Halt::Failed(e)) => Err(e),
    }
}

fn spec(algorithm: Algorithm, estimator: Estimator) -> SorterSpec {
    SorterSpec::new(algorithm, estimator).expect("valid pairing")
}

/// Corsort with the `ρ` estimator.
pub fn corsort<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::Corsort, Estimator::Rho), input)
}

/// First-element-pivot quicksort reporting its working list.
pub fn quicksort_anytime<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::Quicksort, Estimator::Natural), input)
}

/// Median-pivot, breadth-first quicksort with the `ρ` estimator.
pub fn asort<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::Asort, Estimator::Rho), input)
}

/// Top-down mergesort reporting its working list.
pub fn mergesort_dfs<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::MergesortDfs, Estimator::Natural), input)
}

/// Bottom-up mergesort with the `ρ` estimator.
pub fn mergesort_bfs<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::MergesortBfs, Estimator::Rho), input)
}

/// Max-heapsort reporting the reversed heap followed by the sorted suffix.
pub fn heapsort_anytime<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::Heapsort, Estimator::Natural), input)
}

/// Merge-insertion sort with the `ρ` estimator.
pub fn ford_johnson<K: Ord>(input: &HiddenList<K>) -> Result<ComparisonTrace> {
    run(spec(Algorithm::FordJohnson, Estimator::Rho), input)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        let s: SorterSpec = "corsort:rho".parse().unwrap();
        assert_eq!(s.algorithm(), Algorithm::Corsort);
        assert_eq!(s.to_string(), "corsort:rho");
        assert!("heapsort:natural".parse::<SorterSpec>().is_ok());
        assert!("ford_johnson:natural".parse::<SorterSpec>().is_err());
        assert!("mergesort_bfs:natural".parse::<SorterSpec>().is_err());
        assert!("bogosort:rho".parse::<SorterSpec>().is_err());
        assert!("corsort".parse::<SorterSpec>().is_err());
    }

    #[test]
    fn singleton_runs_are_empty() {
        let input = HiddenList::new(vec![42]).unwrap();
        for algorithm in Algorithm::ALL {
            let trace = run(spec(algorithm, Estimator::Rho), &input).unwrap();
            assert_eq!(trace.total_comparisons(), 0);
            assert!(trace.estimates.is_empty());
            assert_eq!(trace.final_order.as_slice(), &[0]);
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(HiddenList::<u8>::new(vec![]), Err(Error::EmptyInput));
    }

    #[test]
    fn duplicates_detected() {
        let input = HiddenList::new(vec![3, 1, 3]).unwrap();
        for algorithm in Algorithm::ALL {
            let err = run(spec(algorithm, Estimator::Rho), &input).unwrap_err();
            assert!(
                matches!(err, Error::DuplicateValues(..)),
                "{algorithm}: {err}"
            );
        }
    }

    #[test]
    fn interruption_stops_after_requested_step() {
        let input = HiddenList::new((0..20).rev().collect::<Vec<_>>()).unwrap();
        let mut seen = 0;
        let summary = run_with(spec(Algorithm::Corsort, Estimator::Rho), &input, |snap| {
            seen = snap.step();
            if snap.step() == 7 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(seen, 7);
        assert_eq!(summary.comparisons, 7);
        assert_eq!(summary.final_order, None);
    }

    #[test]
    fn footnote_convention_past_termination() {
        let input = HiddenList::new(vec![2, 0, 1]).unwrap();
        let trace = mergesort_dfs(&input).unwrap();
        let k = trace.total_comparisons();
        assert_eq!(trace.estimate_at(k + 5), &trace.final_order);
        assert_eq!(trace.final_order.as_slice(), &[1, 2, 0]);
    }
}
