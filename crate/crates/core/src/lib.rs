//! Anytime comparison sorting.
//!
//! An anytime sort can be stopped after any comparison and still report a
//! best guess of the sorted order. This crate provides:
//!
//! - [`poset`]: the partial order implied by the comparisons made so far,
//! - [`estimators`]: score functions turning that order into a guess,
//! - [`sorters`]: Corsort and classic sorts behind a one-comparison-per-step
//!   driver,
//! - [`metrics`]: Kendall-tau distance, the comparison lower bound, and
//!   quantile aggregation of performance profiles.

pub mod error;
pub mod estimators;
pub mod metrics;
pub mod poset;
pub mod sorters;

pub use error::{Error, Result};
pub use estimators::{Estimate, Ratio, ScoreVector};
pub use metrics::{PerformanceProfile, QuantileBands};
pub use poset::PartialOrder;
pub use sorters::{
    Algorithm, Comparison, ComparisonTrace, Estimator, HiddenList, RunSummary, Snapshot, SorterSpec,
};
