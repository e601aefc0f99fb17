//! Command-line surface for signed permutation grid class enumeration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod cache;
pub mod commands;

pub use commands::{run, Outcome};

/// Environment variable that overrides the default cache directory.
pub const CACHE_ENV: &str = "SIGNED_GRID_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] signed_grid::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 70,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Coefficient arrays and plain lines.
    Text,
    Json,
    Latex,
}

#[derive(Debug, Parser)]
#[command(
    name = "signed-grid",
    version,
    about = "Exact enumeration of grid classes of signed permutations"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Cache directory for distance-class generators and histograms
    /// [default: $XDG_CACHE_HOME/signed-grid or ~/.cache/signed-grid].
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Largest prefix-reversal distance that will be built.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_pancake_k: usize,
    /// Largest block-reversal distance that will be built.
    #[arg(long, global = true, default_value_t = 5)]
    pub max_reversal_k: usize,
    /// Allow the oracle to search B_8 (about 10 million states).
    #[arg(long, global = true)]
    pub large_oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate Grid(Π) for a set of signed permutations.
    Enumerate {
        /// A generator, e.g. "-2 1 3"; repeatable. "" is the empty permutation.
        #[arg(long, allow_hyphen_values = true)]
        perm: Vec<String>,
        /// File with one generator per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the exact value at n instead of the polynomial.
        #[arg(long)]
        eval: Option<i64>,
        /// Also print the number of compact representatives by length.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Signed permutations within k prefix reversals of the identity.
    Pancake(DistanceArgs),
    /// Signed permutations within k block reversals of the identity.
    Reversal(DistanceArgs),
    /// Check distance polynomials against breadth-first search over B_n.
    Verify {
        #[arg(long)]
        family: signed_grid::DistanceFamily,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Print the compact permutations contained in a signed permutation.
    Downset {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
    },
    /// Print the compact permutation a signed permutation fills, and how.
    Compactify {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
    },
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long)]
    pub k: usize,
    /// Distance exactly k instead of at most k.
    #[arg(long)]
    pub exact: bool,
    /// Print the exact value at n instead of the polynomial.
    #[arg(long)]
    pub eval: Option<i64>,
    /// Also print the number of generators and compact representatives.
    #[arg(short, long)]
    pub verbose: bool,
}
