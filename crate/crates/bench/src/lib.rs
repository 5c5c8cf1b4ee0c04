//! Reproducible experiments for the `anysort` algorithms.
//!
//! Two experiment modes are supported. `termination` counts comparisons
//! until each sort finishes and reports quantiles of the overhead relative
//! to the information-theoretic lower bound. `profile` records the
//! normalized Kendall-tau distance of the estimate after every comparison
//! and reports per-step quantiles.
//!
//! Inputs come from [`generate_permutation`], which is keyed on
//! `(seed, trial)` so that results never depend on scheduling.

pub mod config;
pub mod experiment;
pub mod report;

pub use config::{ExperimentConfig, Mode};
pub use experiment::{
    generate_permutation, profile_experiment, run_experiment, run_profile_experiment,
    run_termination_experiment, termination_counts, ProfileSummary, ResultRow,
};
pub use report::{emit_csv, emit_plot, read_csv, render_svg, write_csv};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Sort(#[from] anysort::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("malformed row {line}: {reason}")]
    Row { line: u64, reason: String },
    #[error("no rows to report")]
    NoRows,
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
