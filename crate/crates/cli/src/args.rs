use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use fatpoints_core::algebra::Field;
use fatpoints_core::configs::Family;
use fatpoints_core::linsys::Strategy;

#[derive(Debug, Parser)]
#[command(name = "fatpoints", version, about = "Initial degrees of fat point schemes in the projective plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Initial degree of one scheme.
    Alpha(AlphaArgs),
    /// Initial degrees of the uniform schemes kZ for k = 1..=kmax.
    Alphaseq(SeqArgs),
    /// Dimension of the degree-d forms vanishing on a scheme.
    Dim(DimArgs),
    /// Basis of the degree-d forms vanishing on a scheme.
    Kernel(DimArgs),
    /// Run every classification check up to kmax.
    Check(SeqArgs),
    /// Recompute registry examples against their expected tables.
    Repro(ReproArgs),
    /// Randomized search for the conic or cubic statement.
    Search(SearchArgs),
    /// Draw a configuration as SVG.
    Plot(PlotArgs),
    /// Emit the point-set JSON of a generated configuration.
    Generate(GenerateArgs),
}

/// Where the points come from. Exactly one of --points, --family, --config.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["points", "family", "config"])))]
pub struct Source {
    /// Point-set JSON: a file path, `-` for stdin, or an inline JSON object.
    #[arg(long)]
    pub points: Option<String>,
    /// Generator family.
    #[arg(long)]
    pub family: Option<Family>,
    /// Generator parameters as JSON (family plus parameters).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `rational` or `prime:P`. Sets the prime of the prime-field families.
    #[arg(long)]
    pub field: Option<Field>,
    /// Number of points.
    #[arg(long)]
    pub r: Option<usize>,
    /// Number of lines of a star configuration.
    #[arg(long)]
    pub p: Option<usize>,
    /// Degree of the second nodal curve.
    #[arg(long)]
    pub d2: Option<u32>,
    /// Degree parameter of the family, for commands where --d is a degree.
    #[arg(long)]
    pub family_d: Option<u32>,
    /// Coordinate bound for random generators.
    #[arg(long)]
    pub height: Option<i64>,
    /// Retry budget of the nodal generators.
    #[arg(long)]
    pub max_retries: Option<u32>,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for generators and for the random primes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `exact`, `prime` or `multiprime:K`. Without it the search is modular
    /// and both boundary degrees are certified exactly.
    #[arg(long)]
    pub strategy: Option<Strategy>,
    /// Cache directory (FATPOINTS_CACHE takes precedence).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Recompute every cache hit and fail on a mismatch.
    #[arg(long)]
    pub verify_cache: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub source: Source,
    /// Family degree parameter.
    #[arg(long)]
    pub d: Option<u32>,
    /// Multiplicities, comma separated; a single value applies to every point.
    #[arg(long, value_delimiter = ',')]
    pub mults: Vec<u32>,
    /// Attach an explicit form of degree alpha.
    #[arg(long)]
    pub witness: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub source: Source,
    /// Family degree parameter.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub kmax: u32,
    /// CSV table instead of JSON.
    #[arg(long)]
    pub csv: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[command(flatten)]
    pub source: Source,
    /// Degree of the forms.
    #[arg(long)]
    pub d: u32,
    /// Multiplicities, comma separated; a single value applies to every point.
    #[arg(long, value_delimiter = ',')]
    pub mults: Vec<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["id", "all", "list"])))]
pub struct ReproArgs {
    /// Registry id, e.g. ex-type9.
    pub id: Option<String>,
    /// Every registry entry.
    #[arg(long)]
    pub all: bool,
    /// List the registry ids and exit.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// 2 for the conic statement, 3 for the cubic one.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub conjecture: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    /// Smallest and largest number of random points.
    #[arg(long)]
    pub r_min: Option<usize>,
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Coordinate bound of the random points.
    #[arg(long)]
    pub height: Option<i64>,
    /// Skip the control configurations.
    #[arg(long)]
    pub no_controls: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub source: Source,
    /// Family degree parameter.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// SVG output path (standard output if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Draw no lines.
    #[arg(long)]
    pub no_lines: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Family degree parameter.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit the full construction (lines, curves) instead of the point set.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
