use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "matchlab", version, about = "Exact matching certificates for coverings of discrete groups")]
pub struct Cli {
    /// Print a JSON report on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Star, join and refinement of coverings of named atoms.
    Cover(CoverArgs),
    /// Matching number of two atom sets in a covering.
    Mu(MuArgs),
    /// Maximum matching and Hall deficiency of a bipartite graph.
    Match(MatchArgs),
    #[command(subcommand)]
    Folner(FolnerCommand),
    #[command(subcommand)]
    Means(MeansCommand),
    #[command(subcommand)]
    Ramsey(RamseyCommand),
    /// Ball-search ratios over a grid of thresholds, as CSV.
    Sweep(SweepArgs),
    /// Re-check a certificate or a Ramsey witness bundle.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoverOp {
    Star,
    Join,
    Refines,
    StarRefines,
    IsPartition,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(value_enum)]
    pub op: CoverOp,
    #[arg(long)]
    pub cover: String,
    /// Second covering for `join`, or the finer one for the refinement checks.
    #[arg(long)]
    pub other: Option<String>,
    /// Number of star iterations.
    #[arg(long, default_value_t = 1)]
    pub times: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    #[arg(long)]
    pub cover: String,
    /// JSON array file of atoms, or a `;`-separated list.
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[arg(long)]
    pub graph: String,
}

/// Shared group and translate-set options.
#[derive(Debug, Args)]
pub struct GroupOpts {
    /// `zd<d>`, `free<k>`, `cyclic<n>`, `sym<n>` or a group JSON file.
    #[arg(long)]
    pub group: String,
    /// Translate set, `;`-separated; defaults to the generators.
    #[arg(long, value_delimiter = ';')]
    pub e: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CoverSource {
    /// Explicit covering JSON over the window.
    #[arg(long, conflicts_with = "coloring")]
    pub cover: Option<String>,
    /// `parity`, `first-letter`, `random:<k>:<seed>` or a coloring JSON file.
    #[arg(long)]
    pub coloring: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SearchStrategy {
    Balls,
    Local,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AdversaryKind {
    Exhaustive,
    Local,
}

#[derive(Debug, Subcommand)]
pub enum FolnerCommand {
    /// Search for a set meeting the matching threshold.
    Search(SearchArgs),
    /// Re-check a certificate file.
    Check(VerifyArgs),
    /// Search for a coloring that defeats a given set.
    Adversary(AdversaryArgs),
    /// Perfect net of a finite group.
    Net(NetArgs),
    /// Look for a translate `Eg` inside one block.
    Mono(MonoArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub group: GroupOpts,
    #[command(flatten)]
    pub source: CoverSource,
    #[arg(long)]
    pub theta: String,
    #[arg(long, default_value = "asym")]
    pub mode: String,
    #[arg(long, value_enum, default_value = "balls")]
    pub strategy: SearchStrategy,
    /// Largest ball tried; also sets the generated window.
    #[arg(long, default_value_t = 8)]
    pub max_radius: usize,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200_000)]
    pub window_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AdversaryArgs {
    #[command(flatten)]
    pub group: GroupOpts,
    /// The candidate set, `;`-separated.
    #[arg(long, value_delimiter = ';', conflicts_with = "f_radius")]
    pub f: Vec<String>,
    /// Use the ball of this radius as the candidate set.
    #[arg(long)]
    pub f_radius: Option<usize>,
    /// Highest color; colorings use `0..=k`.
    #[arg(long, default_value_t = 1)]
    pub colors: usize,
    #[arg(long, default_value = "asym")]
    pub mode: String,
    #[arg(long, value_enum, default_value = "local")]
    pub strategy: AdversaryKind,
    #[arg(long, default_value_t = 20_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = matchlab_core::folner::DEFAULT_COLORING_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    #[arg(long)]
    pub group: String,
    /// Neighbourhood of the identity, `;`-separated.
    #[arg(long, value_delimiter = ';')]
    pub u: Vec<String>,
    #[arg(long, default_value_t = matchlab_core::folner::DEFAULT_NET_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MonoArgs {
    #[command(flatten)]
    pub group: GroupOpts,
    #[command(flatten)]
    pub source: CoverSource,
    /// Radius of the generated window when coloring by rule.
    #[arg(long, default_value_t = 4)]
    pub window_radius: usize,
}

#[derive(Debug, Subcommand)]
pub enum MeansCommand {
    /// Convolution of two convex combinations.
    Convolve(ConvolveArgs),
    /// Common-denominator approximation of a probability vector.
    Rationalize(RationalizeArgs),
    /// Pushed function `g ↦ Σ ν(x) f(gx)` on a window.
    Push(PushArgs),
}

#[derive(Debug, Args)]
pub struct ConvolveArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RationalizeArgs {
    /// Weights file `{"weights": {...}}`; keys are arbitrary labels.
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub theta: String,
}

#[derive(Debug, Args)]
pub struct PushArgs {
    #[arg(long)]
    pub group: String,
    /// Function file `{"weights": {...}}` read as values, not weights.
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub nu: String,
    #[arg(long, value_delimiter = ';')]
    pub window: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum RamseyCommand {
    /// Check the matching condition over colorings of `emb(A, C)`.
    Check(RamseyArgs),
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub c: String,
    #[arg(long, default_value_t = 1)]
    pub colors: usize,
    #[arg(long)]
    pub eps: String,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample this many colorings instead of enumerating all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = matchlab_core::ramsey::DEFAULT_RAMSEY_COLORING_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub group: GroupOpts,
    /// `start:stop:step`, inclusive, decimals or `p/q`.
    #[arg(long)]
    pub theta_grid: String,
    #[arg(long, default_value_t = 8)]
    pub max_radius: usize,
    #[arg(long, default_value = "parity")]
    pub coloring: String,
    #[arg(long, default_value = "asym")]
    pub mode: String,
    #[arg(long, default_value_t = 200_000)]
    pub window_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: String,
}
