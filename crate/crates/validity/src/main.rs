use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use validity::bench::{
    emit_plot, emit_table, plot_cluster_count, sweep_full, IndexKind, SweepConfig,
    TableFormat,
};
use validity::core::FcmConfig;
use validity::data;
use validity::error::{Error, Result};
use validity::proximity::{MuGrid, WeightConfig, WeightMode};

#[derive(Parser)]
#[command(
    name = "validity",
    about = "Fuzzy c-means cluster-count sweeps scored by eight validity indexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the cluster count over a data set and report every enabled
    /// validity index per c, marking each index's selected c.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Data source: a builtin name (bensaid, starfield, iris, x30,
    /// butterfly) or csv:PATH for a comma-separated file.
    #[arg(long)]
    data: String,

    /// Smallest cluster count to try (default 2).
    #[arg(long)]
    c_min: Option<usize>,

    /// Largest cluster count to try (default floor(sqrt(n))).
    #[arg(long)]
    c_max: Option<usize>,

    /// Fuzzifier exponent (default 2.0).
    #[arg(long)]
    m: Option<f64>,

    /// Convergence threshold on the membership change (default 1e-3).
    #[arg(long)]
    epsilon: Option<f64>,

    /// Random restarts per cluster count (default 10).
    #[arg(long)]
    restarts: Option<usize>,

    /// Seed for both data generation and the solver; falls back to the
    /// VALIDITY_SEED environment variable, then to 42.
    #[arg(long)]
    seed: Option<u64>,

    /// Membership grid resolution for the proximity index (default 0.01).
    #[arg(long)]
    mu_step: Option<f64>,

    /// Proximity weighting: 'ratio' (second/top membership) or 'one'.
    #[arg(long)]
    omega: Option<String>,

    /// Comma-separated list of index columns (default: all eight).
    #[arg(long)]
    indexes: Option<String>,

    /// Table format: tsv (default) or markdown.
    #[arg(long)]
    format: Option<String>,

    /// Write an SVG scatter plot of the selected partition to this path.
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Write the table to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("VALIDITY_SEED") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Error::Config(format!(
                "VALIDITY_SEED must be an unsigned integer, got '{text}'"
            ))
        }),
        Err(_) => Ok(42),
    }
}

fn parse_indexes(text: &str) -> Result<Vec<IndexKind>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse::<IndexKind>()?);
    }
    if out.is_empty() {
        return Err(Error::Config(
            "--indexes must name at least one index".into(),
        ));
    }
    Ok(out)
}

fn run_sweep(args: &SweepArgs) -> Result<()> {
    let seed = resolve_seed(args.seed)?;
    let dataset = if let Some(path) = args.data.strip_prefix("csv:") {
        data::load_csv(Path::new(path))?
    } else {
        data::builtin_by_name(&args.data, seed)?.0
    };

    let defaults = FcmConfig::default();
    let fcm = FcmConfig {
        m: args.m.unwrap_or(defaults.m),
        epsilon: args.epsilon.unwrap_or(defaults.epsilon),
        restarts: args.restarts.unwrap_or(defaults.restarts),
        max_iter: defaults.max_iter,
        seed,
    };

    let grid = match args.mu_step {
        Some(step) => MuGrid::new(step)?,
        None => MuGrid::default(),
    };
    let weight = match args.omega.as_deref() {
        None | Some("ratio") => WeightConfig::default(),
        Some("one") => {
            let base = WeightConfig::default();
            WeightConfig::new(
                WeightMode::ConstantOne,
                base.vague_floor(),
                base.crisp_ceiling(),
            )?
        }
        Some(other) => {
            return Err(Error::Config(format!(
                "unknown omega mode '{other}' (expected ratio or one)"
            )))
        }
    };
    let indexes = match args.indexes.as_deref() {
        Some(text) => parse_indexes(text)?,
        None => IndexKind::ALL.to_vec(),
    };
    let format = match args.format.as_deref() {
        Some(text) => text.parse::<TableFormat>()?,
        None => TableFormat::Tsv,
    };

    let cfg = SweepConfig {
        c_min: args.c_min.unwrap_or(2),
        c_max: args.c_max,
        fcm,
        indexes,
        grid,
        weight,
        ..SweepConfig::default()
    };

    let outcome = sweep_full(&dataset, &cfg)?;
    let table = emit_table(&outcome.report, format);
    match &args.out {
        Some(path) => std::fs::write(path, &table)?,
        None => print!("{table}"),
    }

    if let Some(plot_path) = &args.plot {
        let c = plot_cluster_count(&outcome.report).ok_or_else(|| {
            Error::InvalidRequest("no usable partition to plot".into())
        })?;
        let result = outcome
            .results
            .iter()
            .find(|(cc, r)| *cc == c && r.is_some())
            .and_then(|(_, r)| r.as_ref())
            .expect("plot_cluster_count only returns a c with a usable result");
        if let Some(warning) = emit_plot(&dataset, result, plot_path)? {
            eprintln!("warning: {warning}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::SolverFailedEverywhere) => {
            eprintln!("error: {}", Error::SolverFailedEverywhere);
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
