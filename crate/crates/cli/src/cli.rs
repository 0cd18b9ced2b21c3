use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use htnn::{BoundaryPolicy, Neighborhood};

/// Higher-Order TNN completion experiments.
#[derive(Parser, Debug)]
#[command(name = "htnn", version, about)]
pub struct Cli {
    /// TOML file whose keys mirror the long flags (e.g. `tau-min = 1e-6`).
    /// Flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synthetic recovery grid over (r, missing fraction).
    Synth(SynthArgs),
    /// Complete an image with missing pixels.
    Complete(CompleteArgs),
    /// PSNR and RSE between a recovered image and a reference.
    Eval(EvalArgs),
    /// Write the TSVD factors of a t-matrix as CSV.
    TsvdDump(TsvdDumpArgs),
}

/// Solver flags shared by every command that runs the ADMM.
#[derive(Args, Debug, Default, Clone)]
pub struct SolverArgs {
    /// Initial penalty τ0.
    #[arg(long)]
    pub tau0: Option<f64>,
    /// Penalty decay per iteration, in (0, 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Floor for τ.
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Relative primal residual at which to stop.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Exit with status 3 if any solve does not converge.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Matrix dimension D (the t-matrices are D x D).
    #[arg(long)]
    pub dim: Option<usize>,
    /// t-scalar shape, e.g. `3x3x3`.
    #[arg(long)]
    pub scalar_shape: Option<String>,
    /// Inner dimensions r to sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ranks: Option<Vec<usize>>,
    /// Missing fractions to sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub missing: Option<Vec<f64>>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// RSE below which a trial counts as a success.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cell CSV (`r,rho,success_rate,mean_rse`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-trial CSV.
    #[arg(long)]
    pub trials_out: Option<PathBuf>,
    /// Rendered success-rate heatmap (PNG).
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
    /// Heatmap cell size in pixels.
    #[arg(long)]
    pub cell_px: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args, Debug)]
pub struct CompleteArgs {
    /// Input image (PNG, PPM or PGM).
    pub input: Option<PathBuf>,
    /// Recovered image; format follows the extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Mask file: PNG bitmap (0 = missing, 255 = observed) or CSV of
    /// missing `row,col[,channel]`.
    #[arg(long, conflicts_with = "missing")]
    pub mask: Option<PathBuf>,
    /// Fraction of pixel samples to hide at random.
    #[arg(long)]
    pub missing: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Neighborhood `I1xI2` (odd sizes); `1x1` is the plain TNN baseline.
    #[arg(long)]
    pub neighborhood: Option<Neighborhood>,
    #[arg(long)]
    pub boundary: Option<BoundaryPolicy>,
    /// JSON evaluation report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// CSV evaluation report (no wall time, so reruns compare byte-for-byte).
    #[arg(long)]
    pub report_csv: Option<PathBuf>,
    /// Also write the mask that was used (PNG or CSV by extension).
    #[arg(long)]
    pub save_mask: Option<PathBuf>,
    /// Also write the masked input, missing samples set to 0.
    #[arg(long)]
    pub save_masked: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub recovered: PathBuf,
    pub reference: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a one-row CSV report.
    #[arg(long)]
    pub report_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TsvdDumpArgs {
    /// Lift this image and factor the lifted t-matrix; otherwise a random
    /// t-matrix is drawn from `--seed`.
    #[arg(long)]
    pub image: Option<PathBuf>,
    #[arg(long)]
    pub neighborhood: Option<Neighborhood>,
    #[arg(long)]
    pub boundary: Option<BoundaryPolicy>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub scalar_shape: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
