use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anysort::metrics::DEFAULT_LEVELS;
use anysort::SorterSpec;

use crate::{BenchError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Comparisons until termination, as overhead over the lower bound.
    Termination,
    /// Normalized distance to the sorted order after every comparison.
    Profile,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Termination => "termination",
            Mode::Profile => "profile",
        })
    }
}

impl FromStr for Mode {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "termination" => Ok(Mode::Termination),
            "profile" => Ok(Mode::Profile),
            _ => Err(BenchError::Config(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub algorithms: Vec<SorterSpec>,
    pub levels: Vec<f64>,
    /// Profile length; defaults to the longest run observed.
    pub horizon: Option<usize>,
    pub out: PathBuf,
    pub plot: Option<PathBuf>,
}

pub const DEFAULT_TRIALS: usize = 10_000;

const TERMINATION_ALGORITHMS: &str =
    "heapsort:natural,quicksort:natural,corsort:rho,mergesort_dfs:natural,ford_johnson:rho";
const PROFILE_ALGORITHMS: &str = "corsort:rho,quicksort:natural,asort:rho,\
mergesort_dfs:natural,mergesort_bfs:rho,ford_johnson:rho";

impl ExperimentConfig {
    /// Defaults for `mode`: sizes 8 to 1024 or 1000, and the standard algorithm set.
    pub fn new(mode: Mode) -> Self {
        let (sizes, algos) = match mode {
            Mode::Termination => ((3..=10).map(|k| 1 << k).collect(), TERMINATION_ALGORITHMS),
            Mode::Profile => (vec![1000], PROFILE_ALGORITHMS),
        };
        Self {
            mode,
            sizes,
            trials: DEFAULT_TRIALS,
            seed: 0,
            algorithms: parse_list(algos).expect("valid defaults"),
            levels: DEFAULT_LEVELS.to_vec(),
            horizon: None,
            out: PathBuf::from("results.csv"),
            plot: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(BenchError::Config(msg.to_string()));
        if self.trials == 0 {
            return fail("trials must be at least 1");
        }
        if self.sizes.is_empty() {
            return fail("no sizes given");
        }
        if self.sizes.contains(&0) {
            return fail("sizes must be positive");
        }
        if self.mode == Mode::Termination && self.sizes.iter().any(|&n| n < 2) {
            return fail("termination mode needs sizes of at least 2");
        }
        if self.algorithms.is_empty() {
            return fail("no algorithms given");
        }
        if self.levels.is_empty() || self.levels.iter().any(|l| !(0.0..=1.0).contains(l)) {
            return fail("quantile levels must lie in [0, 1]");
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    ///
    /// Recognised keys: `mode`, `sizes`, `trials`, `seed`, `algos`, `levels`,
    /// `horizon`, `out`, `plot`.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                BenchError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| BenchError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    /// Reads a config file. Defaults follow `mode`, else the file's own
    /// `mode` key, else termination mode.
    pub fn load(path: &Path, mode: Option<Mode>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_text(&text, mode)
    }

    pub fn from_text(text: &str, mode: Option<Mode>) -> Result<Self> {
        let mut probe = Self::new(Mode::Termination);
        probe.apply_file(text)?;
        let mut cfg = Self::new(mode.unwrap_or(probe.mode));
        cfg.apply_file(text)?;
        cfg.mode = mode.unwrap_or(probe.mode);
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "mode" => self.mode = value.parse()?,
            "sizes" => self.sizes = parse_list(value)?,
            "trials" => self.trials = parse_one(value)?,
            "seed" => self.seed = parse_one(value)?,
            "algos" | "algorithms" => self.algorithms = parse_list(value)?,
            "levels" => self.levels = parse_list(value)?,
            "horizon" => self.horizon = Some(parse_one(value)?),
            "out" => self.out = PathBuf::from(value),
            "plot" => self.plot = Some(PathBuf::from(value)),
            _ => return Err(BenchError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }
}

fn parse_one<T: FromStr>(s: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    s.trim()
        .parse()
        .map_err(|e| BenchError::Config(format!("`{s}`: {e}")))
}

/// Comma-separated values.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|item| !item.is_empty())
        .map(parse_one)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut cfg = ExperimentConfig::new(Mode::Termination);
        cfg.apply_file("# comment\nsizes = 8, 16\ntrials=20 # inline\n\nalgos = corsort:rho\n")
            .unwrap();
        assert_eq!(cfg.sizes, vec![8, 16]);
        assert_eq!(cfg.trials, 20);
        assert_eq!(cfg.algorithms, vec!["corsort:rho".parse().unwrap()]);
        cfg.validate().unwrap();
    }

    #[test]
    fn bad_input_is_reported() {
        let mut cfg = ExperimentConfig::new(Mode::Profile);
        assert!(cfg.apply_file("sizes 8").is_err());
        assert!(cfg.apply_file("colour = red").is_err());
        assert!(cfg.apply_file("algos = corsort:natural").is_err());
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::new(Mode::Termination);
        cfg.sizes = vec![1];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn mode_picks_the_defaults() {
        let cfg = ExperimentConfig::from_text("seed = 9\nmode = profile", None).unwrap();
        assert_eq!(cfg.mode, Mode::Profile);
        assert_eq!(cfg.sizes, vec![1000]);
        assert_eq!(cfg.seed, 9);
        let cfg = ExperimentConfig::from_text("mode = profile", Some(Mode::Termination)).unwrap();
        assert_eq!(cfg.mode, Mode::Termination);
        assert_eq!(cfg.sizes.len(), 8);
    }
}
