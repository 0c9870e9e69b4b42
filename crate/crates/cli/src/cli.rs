use std::path::PathBuf;

use angular_support::pipeline::{TailSide, DEFAULT_WARN_RATIO};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "angsupp", version, about = "Angular support estimation and asymptotic independence tests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the support of the angular measure on an m-grid
    Estimate(EstimateArgs),
    /// Test hypothesised support intervals on a held-out split
    Test(TestArgs),
    /// Pairwise extremal dependence scores and graph
    Pairwise(PairwiseArgs),
    /// Generate samples with a known angular measure
    Simulate(SimulateArgs),
    /// Pre-processing: log-returns, ranks, reflection, split transform, splits
    Transform(TransformArgs),
    /// Hill tail-index report per column
    Hill(HillArgs),
    /// Serve the HTTP/JSON API
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct Input {
    /// CSV file with a header row
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: Input,
    /// Number of most extreme observations
    #[arg(short)]
    pub k: usize,
    /// Grid resolution
    #[arg(short)]
    pub m: usize,
    /// Rejection threshold in [0, 1)
    #[arg(short, default_value_t = 0.0)]
    pub q: f64,
    /// Quadrant, e.g. "+-+" or "1,-1,1"
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    /// Also write an SVG plot (N = 2 or 3) and `<plot>.points.json`
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short)]
    pub k: usize,
    /// Disjoint ordered intervals, e.g. "0:0.325,0.5:0.825" or "0,1" for points
    #[arg(long)]
    pub intervals: String,
    /// Interval masses; estimated from the estimation split when omitted
    #[arg(long)]
    pub masses: Option<String>,
    /// Fraction of rows used for estimation
    #[arg(long, default_value_t = 0.5)]
    pub fraction: f64,
    #[arg(long)]
    pub seed: u64,
    /// Split-transform both parts before testing
    #[arg(long)]
    pub split_transform: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    /// Column groups (0-based) to reduce to a pair, e.g. "0,1;2"
    #[arg(long)]
    pub groups: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PairwiseArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short)]
    pub k: usize,
    #[arg(long, default_value_t = 0.46)]
    pub threshold: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(subcommand)]
    pub kind: SimulateKind,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum SimulateKind {
    /// Signal on a region plus uniform noise, from a preset or a JSON spec
    Mixture {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        preset: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the seed of the preset or spec
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Mass only on the two axes
    Face {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "0.5,0.5")]
        masses: String,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long)]
        seed: u64,
    },
    /// First angular coordinate uniform on an interval
    Interval {
        #[arg(short)]
        n: usize,
        /// "a:b"
        #[arg(long)]
        interval: String,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Columns sharing a heavy-tailed factor within each sector
    Sectors {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sectors: usize,
        #[arg(long, default_value_t = 3)]
        per_sector: usize,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(subcommand)]
    pub op: TransformOp,
}

#[derive(Debug, Subcommand)]
pub enum TransformOp {
    LogReturns {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Replace entries by n / descending rank
    Rank {
        #[command(flatten)]
        input: Input,
        /// Rank absolute values
        #[arg(long)]
        absolute: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Multiply by quadrant signs and drop rows leaving the positive orthant
    Reflect {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        #[command(flatten)]
        output: Output,
    },
    SplitTransform {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Write a seeded estimate/test split plan as JSON
    Split {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.5)]
        fraction: f64,
        #[arg(long)]
        seed: u64,
        /// Also write the estimation rows as CSV
        #[arg(long)]
        estimate_csv: Option<PathBuf>,
        /// Also write the test rows as CSV
        #[arg(long)]
        test_csv: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Side {
    Positive,
    Negative,
}

impl From<Side> for TailSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Positive => TailSide::Positive,
            Side::Negative => TailSide::Negative,
        }
    }
}

#[derive(Debug, Args)]
pub struct HillArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub k_hill: usize,
    #[arg(long, value_enum, default_value_t = Side::Positive)]
    pub side: Side,
    #[arg(long, default_value_t = DEFAULT_WARN_RATIO)]
    pub warn_ratio: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value_t = 64 << 20)]
    pub max_upload_bytes: usize,
    #[arg(long, default_value_t = 256)]
    pub cache_entries: usize,
}
