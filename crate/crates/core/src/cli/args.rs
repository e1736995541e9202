use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "xorgame", version, about = "Classical and one-way values of XOR games")]
pub struct Cli {
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values, bounds and certificates for a game file.
    Solve(SolveArgs),
    /// Write a generated game as JSON.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Run one of the numerical experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[default]
    Auto,
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, Args)]
pub struct SolveArgs {
    /// Game JSON with fields n, f and pi.
    #[arg(long)]
    pub game: PathBuf,
    /// Bit budgets to evaluate; defaults to 0 ..= ceil(log2 n).
    #[arg(long, value_delimiter = ',')]
    pub bits: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Required whenever the heuristic path runs.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 24)]
    pub classical_cap: usize,
    #[arg(long, default_value_t = 14)]
    pub dp_cap: usize,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, default_value_t = 5000)]
    pub iters: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum GenerateCommand {
    /// Uniform random signs, uniform distribution.
    Chevet(ChevetGameArgs),
    /// Random sign block of size 2^c in the top-left corner.
    ChevetBlock(ChevetBlockArgs),
    /// p-stable construction with values near delta; also writes a report.
    Levi(LeviArgs),
}

#[derive(Clone, Debug, Args)]
pub struct ChevetGameArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct ChevetBlockArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct LeviTarget {
    #[arg(long)]
    pub delta: f64,
    /// Number of one-way messages; overrides --c.
    #[arg(long)]
    pub t: Option<u64>,
    /// Two-way bits; sets t = 2^(2^c).
    #[arg(long, default_value_t = 0)]
    pub c: u32,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub rows: usize,
    /// Random directions for the distortion estimate.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Clone, Debug, Args)]
pub struct LeviArgs {
    #[command(flatten)]
    pub target: LeviTarget,
    #[arg(long)]
    pub out: PathBuf,
    /// Sidecar report path; defaults to the game path with `.report.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Spread of ω over random sign games and single-entry flips.
    Concentration(ConcentrationArgs),
    /// Exact ω and ω_c¹ against the two-sided one-way bounds.
    Tightness(TightnessArgs),
    /// Mean bilinear maximum of random sign matrices.
    Chevet(ChevetArgs),
    /// Value intervals of the p-stable construction around delta.
    Bell(BellArgs),
}

#[derive(Clone, Debug, Args)]
pub struct PlotOutput {
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a matplotlib script that plots the CSV given by --out.
    #[arg(long)]
    pub emit_plot: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct ConcentrationArgs {
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.05, 0.1, 0.2, 0.3])]
    pub r: Vec<f64>,
    #[arg(long, default_value_t = 500)]
    pub flips: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: PlotOutput,
}

#[derive(Clone, Debug, Args)]
pub struct TightnessArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [8usize, 10, 12, 14])]
    pub n: Vec<usize>,
    /// Games per family and size.
    #[arg(long, default_value_t = 3)]
    pub seeds: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: PlotOutput,
}

#[derive(Clone, Debug, Args)]
pub struct ChevetArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 24])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: PlotOutput,
}

#[derive(Clone, Debug, Args)]
pub struct BellArgs {
    #[command(flatten)]
    pub target: LeviTarget,
    /// Restarts of the local search for a lower bound on ω.
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
