use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::format::PointFormat;
use crate::integrands::Integrand;

#[derive(Debug, Parser)]
#[command(
    name = "frolov",
    version,
    about = "Chebyshev-Frolov lattice points and Frolov cubature"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count lattice points in a box and print a JSON summary.
    Count(CountArgs),
    /// Stream lattice points (or cubature nodes), one per line.
    Points(PointsArgs),
    /// Deterministic Frolov cubature of a built-in integrand.
    Integrate(IntegrateArgs),
    /// Randomized Frolov cubature of a built-in integrand.
    IntegrateRandom(IntegrateRandomArgs),
    /// Structural checks, the doubled-scale check and the golden table.
    Verify(VerifyArgs),
    /// Reproduce the golden node-count table as CSV.
    Table(TableArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DimArgs {
    /// Dimension d (a power of two).
    #[arg(long = "dim")]
    pub dim: Option<usize>,
    /// Level n, with d = 2^n.
    #[arg(long = "level")]
    pub level: Option<u32>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RegionArgs {
    /// Scale N > 0; the standard cubature box for N.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Scale N = 2^m.
    #[arg(long = "log2-scale", allow_negative_numbers = true)]
    pub log2_scale: Option<i32>,
    /// Explicit box: d lower corners followed by d upper corners.
    #[arg(long = "box", num_args = 1.., allow_negative_numbers = true, value_name = "B1.. C1..")]
    pub bounds: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ScaleArgs {
    /// Scale N > 0.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Scale N = 2^m.
    #[arg(long = "log2-scale", allow_negative_numbers = true)]
    pub log2_scale: Option<i32>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to FILE instead of stdout.
    #[arg(long = "out", value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    /// Widen every integer range by this slack on both ends.
    #[arg(long = "boundary-eps", default_value_t = 0.0)]
    pub boundary_eps: f64,
    /// Worker threads; the range of k_1 is split between them.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PointsArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, value_enum, default_value_t = PointFormat::Csv)]
    pub format: PointFormat,
    /// Significant digits per real.
    #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
    /// Emit a CSV header x1..xd.
    #[arg(long)]
    pub header: bool,
    /// With a scale: print the lattice points A_n k instead of the nodes in the unit cube.
    #[arg(long)]
    pub raw: bool,
    /// With a scale: nodes of the randomized rule for this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "boundary-eps", default_value_t = 0.0)]
    pub boundary_eps: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub dim: DimArgs,
    #[command(flatten)]
    pub scale: ScaleArgs,
    #[arg(long, value_enum, default_value_t = Integrand::CosProduct)]
    pub integrand: Integrand,
    /// Compensated (Neumaier) summation.
    #[arg(long)]
    pub compensated: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IntegrateRandomArgs {
    #[command(flatten)]
    pub common: IntegrateArgs,
    /// Seed of the first random shift.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of independent shifts (seeds seed, seed+1, ...) to average.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest dimension for the golden-table rows.
    #[arg(long = "max-dim", default_value_t = 8)]
    pub max_dim: usize,
    /// Largest log2 N for the golden-table rows.
    #[arg(long = "max-log2-scale", default_value_t = 10)]
    pub max_log2_scale: u32,
    /// Alternative golden table (CSV: d,log2N,count).
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long = "max-dim", default_value_t = 8)]
    pub max_dim: usize,
    #[arg(long = "max-log2-scale", default_value_t = 10)]
    pub max_log2_scale: u32,
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
