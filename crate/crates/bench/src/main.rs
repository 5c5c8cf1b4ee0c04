use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use anysort::SorterSpec;
use anysort_bench::config::parse_list;
use anysort_bench::{emit_csv, emit_plot, read_csv, run_experiment, ExperimentConfig, Mode};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "anysort",
    version,
    about = "Benchmarks for anytime sorting algorithms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write its quantiles as CSV.
    Bench(BenchArgs),
    /// Render an SVG chart from a CSV written by `bench`.
    Plot {
        /// CSV produced by `anysort bench`.
        input: PathBuf,
        #[arg(long, default_value = "plot.svg")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// termination or profile.
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated list sizes, e.g. 8,16,32.
    #[arg(long)]
    sizes: Option<String>,
    /// Random inputs per size (default 10000).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated `algorithm:estimator` specs.
    #[arg(long)]
    algos: Option<String>,
    /// Comma-separated quantile levels in [0, 1].
    #[arg(long)]
    levels: Option<String>,
    /// Profile length in steps (profile mode).
    #[arg(long)]
    horizon: Option<usize>,
    /// CSV output path (default results.csv).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG chart here.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// key = value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(args: BenchArgs) -> anyhow::Result<ExperimentConfig> {
    let mode: Option<Mode> = args.mode.as_deref().map(str::parse).transpose()?;
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path, mode)?,
        None => ExperimentConfig::new(mode.unwrap_or(Mode::Termination)),
    };
    if let Some(s) = &args.sizes {
        cfg.sizes = parse_list(s)?;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(a) = &args.algos {
        cfg.algorithms = parse_list::<SorterSpec>(a)?;
    }
    if let Some(l) = &args.levels {
        cfg.levels = parse_list(l)?;
    }
    if args.horizon.is_some() {
        cfg.horizon = args.horizon;
    }
    if let Some(o) = args.out {
        cfg.out = o;
    }
    if args.plot.is_some() {
        cfg.plot = args.plot;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Bench(args) => {
            let cfg = build_config(args)?;
            let rows = run_experiment(&cfg)?;
            emit_csv(&rows, &cfg.out)?;
            if let Some(plot) = &cfg.plot {
                emit_plot(&rows, plot)?;
            }
        }
        Command::Plot { input, out } => {
            let rows = read_csv(&input).with_context(|| format!("reading {}", input.display()))?;
            emit_plot(&rows, &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("anysort: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
