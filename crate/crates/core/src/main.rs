//! Experiment CLI: noiseless recovery runs, MSE sweeps, dataset generation,
//! and feasibility checks.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hodgesamp::datasets::{self, TwoHoleConfig};
use hodgesamp::experiment::{
    run_mse_sweep, run_noiseless, sweep_to_csv, ComplexSource, ExperimentConfig,
};

#[derive(Parser)]
#[command(
    name = "hodgesamp",
    version,
    about = "Aggregation sampling and recovery of simplicial signals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single noiseless synthesis/recovery cycle and report errors.
    Recover(RunArgs),
    /// Run an MSE sweep over noise variances and sampling-set sizes.
    Sweep(SweepArgs),
    /// Generate a builtin dataset and export it as JSON (plus coordinates).
    Gen(GenArgs),
    /// Evaluate the perfect-recovery conditions without recovering.
    Check(RunArgs),
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Complex to use: `small`, `two-hole`, or a path to a complex JSON file.
    #[arg(long, default_value = "small")]
    complex: String,
    /// Point count for the two-hole complex.
    #[arg(long)]
    points: Option<usize>,
    /// Seed for the two-hole point cloud.
    #[arg(long)]
    dataset_seed: Option<u64>,
}

impl SourceArgs {
    fn to_source(&self) -> ComplexSource {
        match self.complex.as_str() {
            "small" => ComplexSource::Small,
            "two-hole" => {
                let mut cfg = TwoHoleConfig::default();
                if let Some(n) = self.points {
                    cfg.num_points = n;
                }
                if let Some(s) = self.dataset_seed {
                    cfg.seed = s;
                }
                ComplexSource::TwoHole(cfg)
            }
            path => ComplexSource::File {
                path: PathBuf::from(path),
            },
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Load the full experiment config from a JSON file; explicit flags
    /// override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    source: SourceArgs,
    /// Node-signal bandwidth W0.
    #[arg(long)]
    w0: Option<usize>,
    /// Triangle-signal bandwidth W2.
    #[arg(long)]
    w2: Option<usize>,
    /// Harmonic bandwidth R1.
    #[arg(long)]
    r1: Option<usize>,
    /// Number of aggregation shifts P.
    #[arg(long)]
    p: Option<usize>,
    /// Sampling-set size |S|.
    #[arg(long)]
    sample_size: Option<usize>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Normalize the shift operator by the largest L1 eigenvalue.
    #[arg(long)]
    scale_spectrum: bool,
    /// Write report.json and CSV artifacts here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    w0: Option<usize>,
    #[arg(long)]
    w2: Option<usize>,
    #[arg(long)]
    r1: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Comma-separated sampling-set sizes.
    #[arg(long, value_delimiter = ',')]
    sample_sizes: Vec<usize>,
    /// Comma-separated noise variances.
    #[arg(long, value_delimiter = ',')]
    variances: Vec<f64>,
    /// Noise realizations per cell.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    scale_spectrum: bool,
    /// Redraw the sampling set each trial instead of fixing it per cell.
    #[arg(long)]
    resample_per_trial: bool,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// `small` or `two-hole`.
    dataset: String,
    /// Output path for the complex JSON.
    #[arg(long)]
    out: PathBuf,
    /// Optional CSV of node coordinates (two-hole only).
    #[arg(long)]
    coords: Option<PathBuf>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    dataset_seed: Option<u64>,
}

fn base_config(path: &Option<PathBuf>) -> Result<ExperimentConfig> {
    match path {
        None => Ok(ExperimentConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?;
            Ok(ExperimentConfig::from_json(&text)?)
        }
    }
}

fn apply_run_args(cfg: &mut ExperimentConfig, args: &RunArgs, source_given: bool) {
    if source_given {
        cfg.source = args.source.to_source();
    }
    if let Some(v) = args.w0 {
        cfg.w0 = v;
    }
    if let Some(v) = args.w2 {
        cfg.w2 = v;
    }
    if let Some(v) = args.r1 {
        cfg.r1 = v;
    }
    if let Some(v) = args.p {
        cfg.p_shifts = v;
    }
    if let Some(v) = args.sample_size {
        cfg.sample_sizes = vec![v];
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if args.scale_spectrum {
        cfg.spectral_scaling = true;
    }
    if let Some(dir) = &args.out_dir {
        cfg.out_dir = Some(dir.clone());
    }
}

fn cmd_recover(args: RunArgs) -> Result<ExitCode> {
    let mut cfg = base_config(&args.config)?;
    apply_run_args(
        &mut cfg,
        &args,
        args.config.is_none() || args.complex_given(),
    );
    let report = run_noiseless(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if report.recovery.is_none() {
        eprintln!(
            "system rank {}/{} with sufficient conditions unmet; no recovery attempted",
            report.rank.rank, report.rank.full_rank
        );
        return Ok(ExitCode::from(2));
    }
    if report.is_perfect(1e-6) {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("recovery error above 1e-6");
        Ok(ExitCode::FAILURE)
    }
}

impl RunArgs {
    fn complex_given(&self) -> bool {
        self.source.complex != "small"
            || self.source.points.is_some()
            || self.source.dataset_seed.is_some()
    }
}

fn cmd_check(args: RunArgs) -> Result<ExitCode> {
    let mut cfg = base_config(&args.config)?;
    apply_run_args(
        &mut cfg,
        &args,
        args.config.is_none() || args.complex_given(),
    );
    cfg.out_dir = None;
    let report = run_noiseless(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report.feasibility)?);
    Ok(if report.feasibility.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let mut cfg = base_config(&args.config)?;
    let source_given = args.source.complex != "small"
        || args.source.points.is_some()
        || args.source.dataset_seed.is_some()
        || args.config.is_none();
    if source_given {
        cfg.source = args.source.to_source();
    }
    if let Some(v) = args.w0 {
        cfg.w0 = v;
    }
    if let Some(v) = args.w2 {
        cfg.w2 = v;
    }
    if let Some(v) = args.r1 {
        cfg.r1 = v;
    }
    if let Some(v) = args.p {
        cfg.p_shifts = v;
    }
    if !args.sample_sizes.is_empty() {
        cfg.sample_sizes = args.sample_sizes.clone();
    }
    if !args.variances.is_empty() {
        cfg.noise_variances = args.variances.clone();
    }
    if let Some(v) = args.trials {
        cfg.trials = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if args.scale_spectrum {
        cfg.spectral_scaling = true;
    }
    if args.resample_per_trial {
        cfg.resample_per_trial = true;
    }
    if let Some(dir) = &args.out_dir {
        cfg.out_dir = Some(dir.clone());
    }

    let rows = run_mse_sweep(&cfg)?;
    print!("{}", sweep_to_csv(&rows));
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    match args.dataset.as_str() {
        "small" => {
            let c = datasets::small_complex();
            std::fs::write(&args.out, c.to_json())
                .with_context(|| format!("writing {}", args.out.display()))?;
            if args.coords.is_some() {
                bail!("the small complex has no coordinates to export");
            }
        }
        "two-hole" => {
            let mut cfg = TwoHoleConfig::default();
            if let Some(n) = args.points {
                cfg.num_points = n;
            }
            if let Some(s) = args.dataset_seed {
                cfg.seed = s;
            }
            let out = datasets::two_hole_complex(&cfg)?;
            std::fs::write(&args.out, out.complex.to_json())
                .with_context(|| format!("writing {}", args.out.display()))?;
            if let Some(coords) = &args.coords {
                let mut s = String::new();
                for p in &out.points {
                    s.push_str(&format!("{},{}\n", p[0], p[1]));
                }
                std::fs::write(coords, s)
                    .with_context(|| format!("writing {}", coords.display()))?;
            }
        }
        other => bail!("unknown dataset {other:?}; expected `small` or `two-hole`"),
    }
    eprintln!("wrote {}", args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Recover(args) => cmd_recover(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Check(args) => cmd_check(args),
    }
}
