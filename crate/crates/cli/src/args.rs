use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rbf", version, about = "Exact trapezoidal-rule bias via the grid resonance function")]
#[command(args_override_self = true)]
pub struct Cli {
    /// JSON file whose keys mirror the long flags; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex resonance value at one relative frequency.
    Chi(GridAt),
    /// The P phasors and their centroid.
    Arrows(GridAt),
    /// Bias of one integrand or spectrum by every available route.
    Bias(BiasArgs),
    /// Direct error, prediction and bound for a range of grid sizes.
    Sweep(SweepArgs),
    /// The real resonance landscape with peak/zero classification.
    Landscape(LandscapeArgs),
    /// Both 2D landscape definitions on a square grid.
    Landscape2d(Landscape2dArgs),
    /// Spectrum, grid filter and filtered spectrum, mode by mode.
    Filter(FilterArgs),
    /// Fourier coefficients of a built-in integrand by direct DFT.
    SpectrumEstimate(EstimateArgs),
    /// The three reference cases; exits 1 if any discrepancy reaches 1e-9.
    Validate,
}

#[derive(Debug, Args)]
pub struct GridAt {
    #[arg(long = "P")]
    pub p: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
}

#[derive(Debug, Args, Clone)]
pub struct FnArgs {
    /// Registry name: sin2, cos2pin, expcos, prod_cos8pi. `sin2(2.3)` form accepted.
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    /// Frequency parameter of sin2.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Integer frequency of cos2pin.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
}

#[derive(Debug, Args)]
pub struct BiasArgs {
    #[command(flatten)]
    pub f: FnArgs,
    /// 1D spectrum JSON file.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["function", "spectrum2d"])]
    pub spectrum: Option<PathBuf>,
    /// 2D spectrum JSON file.
    #[arg(long, value_name = "PATH", conflicts_with = "function")]
    pub spectrum2d: Option<PathBuf>,
    #[arg(long = "P")]
    pub p: usize,
    /// Alias terms per side; defaults to reaching the largest stored mode.
    #[arg(long)]
    pub lmax: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub f: FnArgs,
    #[arg(long, default_value_t = 2)]
    pub pmin: usize,
    #[arg(long)]
    pub pmax: usize,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[arg(long = "P")]
    pub p: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub ymin: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub ymax: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct Landscape2dArgs {
    #[arg(long = "P")]
    pub p: usize,
    #[arg(long, default_value_t = 2.0)]
    pub range: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[command(flatten)]
    pub f: FnArgs,
    #[arg(long, value_name = "PATH", conflicts_with = "function")]
    pub spectrum: Option<PathBuf>,
    #[arg(long = "P")]
    pub p: usize,
    #[arg(long)]
    pub krange: u64,
    /// Evaluate the filter numerically instead of the exact indicator.
    #[arg(long)]
    pub diagnostic: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub f: FnArgs,
    /// DFT length.
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    /// Largest mode kept; defaults to samples/2 - 1.
    #[arg(long)]
    pub kmax: Option<u64>,
    #[arg(long, default_value_t = 1e-14)]
    pub drop_tol: f64,
}
