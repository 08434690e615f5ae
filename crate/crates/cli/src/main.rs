//! `fracpath`: runs the sampler, BV, fractional-calculus and Monte Carlo
//! experiments and writes their CSV reports.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CliError, List};

#[derive(Debug, Parser)]
#[command(
    name = "fracpath",
    version,
    about = "Running-maximum representations and fBm experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one fBm path and write it as `t,value` CSV.
    Fbm(FbmArgs),
    /// Quadratic variation across dyadic grids and its log-log slope.
    Qv(QvArgs),
    /// Monte Carlo check of the Brownian maximum representation.
    Maxrep(MaxrepArgs),
    /// Record-integral identity on a random PL corpus and the step counterexample.
    Bvcheck(BvcheckArgs),
    /// Generalized Lebesgue-Stieltjes integral and its bound for two functions.
    Gls(GlsArgs),
    /// Record-indicator battery for fBm with H > 1/2.
    Failure(FailureArgs),
}

/// Options shared by every subcommand. Flags override `--config`.
#[derive(Debug, Args)]
pub struct Common {
    /// Plain-text file of `key=value` lines (keys are the long flag names).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Base seed [default: 42].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Time horizon T > 0 [default: 1].
    #[arg(long)]
    pub horizon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FbmArgs {
    #[command(flatten)]
    pub common: Common,
    /// Hurst index in (0, 1) [default: 0.75].
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Number of grid steps [default: 1024].
    #[arg(long)]
    pub steps: Option<usize>,
    /// `circulant` or `cholesky` [default: circulant].
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct QvArgs {
    #[command(flatten)]
    pub common: Common,
    /// Hurst index in (0, 1) [default: 0.75].
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Comma-separated increasing powers of two [default: 256,512,...,16384].
    #[arg(long)]
    pub grids: Option<List<usize>>,
    /// Paths per grid [default: 200].
    #[arg(long)]
    pub replicas: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MaxrepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Must be 0.5 [default: 0.5].
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Comma-separated increasing powers of two [default: 256,1024,4096].
    #[arg(long, conflicts_with = "steps")]
    pub grids: Option<List<usize>>,
    /// Single grid, shorthand for `--grids N`.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Number of Brownian paths [default: 10000].
    #[arg(long)]
    pub replicas: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BvcheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of random functions in each corpus [default: 1000].
    #[arg(long)]
    pub corpus: Option<usize>,
    /// Maximum pieces of a random PL function [default: 40].
    #[arg(long)]
    pub pieces: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GlsArgs {
    #[command(flatten)]
    pub common: Common,
    /// Integrand as `t,value` CSV on a uniform grid [default: x^2 on --steps].
    #[arg(long)]
    pub f: Option<PathBuf>,
    /// Integrator as `t,value` CSV on the same grid [default: x^3 on --steps].
    #[arg(long)]
    pub g: Option<PathBuf>,
    /// Grid steps for the built-in pair [default: 4096].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Fractional order in (0, 1) [default: 0.375, the midpoint of (1 - H, 1/2) at H = 0.75].
    #[arg(long)]
    pub beta: Option<f64>,
    /// Upper limit of integration, a grid point [default: the horizon].
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FailureArgs {
    #[command(flatten)]
    pub common: Common,
    /// Hurst index in (0.5, 1) [default: 0.75].
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Fractional order in (1 - H, 1/2) [default: midpoint].
    #[arg(long)]
    pub beta: Option<f64>,
    /// Number of fBm paths [default: 1000].
    #[arg(long)]
    pub replicas: Option<usize>,
    /// Summation grids, increasing powers of two [default: 256,1024,4096].
    #[arg(long)]
    pub grids: Option<List<usize>>,
    /// Band widths as fractions of the path range [default: 0.1,0.01,0.001].
    #[arg(long)]
    pub eps: Option<List<f64>>,
    /// Reference-grid refinement, a power of two [default: 16].
    #[arg(long)]
    pub refine: Option<usize>,
    /// Paths that also run the GLS rows [default: 16].
    #[arg(long)]
    pub gls_paths: Option<usize>,
    /// Summation grid of the GLS rows [default: 1024].
    #[arg(long)]
    pub gls_grid: Option<usize>,
}

/// Applies `FRACPATH_THREADS` (0 or unset: one worker per core).
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FRACPATH_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "FRACPATH_THREADS = `{raw}` is not a non-negative integer"
        ))
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("FRACPATH_THREADS: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match configure_threads().and_then(|_| commands::run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracpath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
