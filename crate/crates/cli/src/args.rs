use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use walk_core::models::line::SpinWindow;

#[derive(Debug, Parser)]
#[command(name = "walk", version, about = "Entropy time series of quantum walks entangled with spin reservoirs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One-dimensional scatterer chain with spins on the boundaries.
    Line(LineArgs),
    /// Splitter tree without interference, one spin per edge.
    Tree(TreeArgs),
    /// Splitter lattice with interference and fresh spins every step.
    Lattice(LatticeArgs),
    /// Parameter scans.
    #[command(subcommand)]
    Scan(ScanCommand),
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// First entropy drop of the all-spins line walk over a transparency grid.
    FirstDrop(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    /// Exact spectrum from the self-similar structure of the tree; no size cap.
    Hierarchical,
    /// Dense Z^tau density matrix, limited by WALK_DIM_CAP.
    Dense,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Number of steps.
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    pub steps: Option<usize>,
    /// Output file; `-` writes the data to stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the --out extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// `key = value` file with defaults for any of the flags.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LineArgs {
    /// Scatterer transparency, one or more comma-separated values.
    #[arg(long = "T", value_name = "T", value_delimiter = ',', allow_negative_numbers = true)]
    pub transparency: Vec<f64>,
    /// none, all, or an odd spin count; comma-separated for several runs.
    #[arg(long, value_name = "SPINS", value_delimiter = ',', value_parser = parse_window)]
    pub spins: Vec<SpinWindow>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TreeArgs {
    /// Splitter transparency, one or more comma-separated values.
    #[arg(long = "T", value_name = "T", value_delimiter = ',', allow_negative_numbers = true)]
    pub transparency: Vec<f64>,
    /// Spin-record overlap in [0, 1].
    #[arg(long, value_name = "BETA", value_delimiter = ',', allow_negative_numbers = true)]
    pub beta: Vec<f64>,
    /// Number of splitter outputs.
    #[arg(long = "Z", value_name = "Z")]
    pub outputs: Option<usize>,
    #[arg(long, value_enum)]
    pub solver: Option<Solver>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LatticeArgs {
    /// Splitter transparency, one or more comma-separated values.
    #[arg(long = "T", value_name = "T", value_delimiter = ',', allow_negative_numbers = true)]
    pub transparency: Vec<f64>,
    /// Spin-record overlap in [0, 1], one or more comma-separated values.
    #[arg(long, value_name = "BETA", value_delimiter = ',', allow_negative_numbers = true)]
    pub beta: Vec<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long = "T-min", value_name = "T", allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    #[arg(long = "T-max", value_name = "T", allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long = "T-step", value_name = "DT", allow_negative_numbers = true)]
    pub t_step: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

pub fn parse_window(s: &str) -> Result<SpinWindow, String> {
    s.parse().map_err(|e: walk_core::WalkError| e.to_string())
}
