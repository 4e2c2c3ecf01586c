use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "cube-kappa",
    version,
    about = "Connectivity and cut-structure tasks on k-ary n-cubes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Worker threads (default: all available).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Results cache directory (default: $CUBE_KAPPA_CACHE, then ~/.cache/cube-kappa).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Recompute even when a cached result exists.
    #[arg(long, global = true)]
    pub force: bool,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the record here; for `export`, the graph file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Fragment,
    Sample,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Edgelist,
    Dimacs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Degrees, edge count, subcube partitions, outer neighbors, vertex and edge transitivity.
    Regularity,
    /// Adjacent vertices share one neighbor, nonadjacent ones zero or two (k = 3).
    CommonNeighbors,
    /// |F| <= 4n-4 leaves G-F connected or cuts off one vertex.
    SingletonCuts,
    /// |F| <= 6n-8 cuts off at most a vertex, an edge, or two vertices.
    SmallSideCuts,
    /// |F| <= 8n-13 leaves one of four small-side patterns.
    ThreeExtraCuts,
    /// Surviving subcubes stay connected together when at most two break (n >= 4).
    SubcubeUnion,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build Q_n^k and report its size.
    Build(CubeArgs),
    /// Vertex connectivity and super-connectedness.
    Kappa(CubeArgs),
    /// h-extra connectivity.
    Extra(ExtraArgs),
    /// The extremal fragment cut for h in 1..=3 (k = 3).
    Construct(ConstructArgs),
    /// Check a structural claim.
    Verify(VerifyArgs),
    /// Write the cube to a graph file given by --out.
    Export(ExportArgs),
    /// Inspect or empty the results cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CubeArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ExtraArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub h: usize,
    /// Default: exhaustive up to 32 vertices, fragment above.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Largest cut size (exhaustive) or fragment size (fragment) to search.
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub h: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub claim: Claim,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
    /// Default: exhaustive for n <= 3, sample above.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Fault-set size bound; defaults to the claim's own bound.
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Partition dimension for `subcube-union`.
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ExportArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    pub graph_format: GraphFormat,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    List,
    Clear,
}
