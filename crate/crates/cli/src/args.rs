use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact moments, cumulants, spline recovery, invariants and relation
/// checks for uniform measures on polytopes.
#[derive(Debug, Parser)]
#[command(name = "polymom", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputOpts {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Print values as decimals with this many significant digits instead
    /// of exact [numerator, denominator] pairs.
    #[arg(long, value_name = "DIGITS")]
    pub decimal: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments of the uniform measure on a polytope.
    Moments {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Adjoint polynomial of a polytope.
    Adjoint {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Cumulants of a polytope or of a moment vector.
    Cumulants {
        #[arg(long, conflicts_with = "moments", required_unless_present = "moments")]
        polytope: Option<PathBuf>,
        #[arg(long)]
        moments: Option<PathBuf>,
        /// Required with --polytope.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        order: Option<u32>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Recover a one-dimensional polytopal spline from its moments.
    Recover1d {
        #[arg(long)]
        moments: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Project moments in higher dimension along this vector first,
        /// e.g. "1,-2/3".
        #[arg(long)]
        direction: Option<String>,
    },
    /// Affine invariants of a moment vector of order 3.
    Invariants {
        #[arg(long, conflicts_with = "moments", required_unless_present = "moments")]
        polytope: Option<PathBuf>,
        #[arg(long)]
        moments: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Check relations from the catalog.
    Verify(VerifyArgs),
    /// Moments of the image of a measure under an affine map.
    Transform {
        #[arg(long)]
        moments: PathBuf,
        /// Rows separated by ';', entries by ',', e.g. "1,2;0,1/2".
        #[arg(long)]
        matrix: String,
        /// Translation vector, e.g. "0,3"; zero if omitted.
        #[arg(long)]
        shift: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Random rational polytopes, or uniform sample points of a polytope.
    Sample {
        /// triangle, quadrilateral, tetrahedron, segment or polygon-N.
        #[arg(long, conflicts_with = "polytope", required_unless_present = "polytope")]
        family: Option<String>,
        /// Draw sample points from this polytope instead.
        #[arg(long)]
        polytope: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Catalog id of the relation to check.
    #[arg(long, conflicts_with = "all", required_unless_present_any = ["all", "relation_file"])]
    pub relation: Option<String>,
    /// Check every relation of the catalog.
    #[arg(long)]
    pub all: bool,
    /// Load relations from data files instead of the built-in catalog.
    #[arg(long)]
    pub relation_file: Vec<PathBuf>,
    /// Evaluate on the moments of this polytope.
    #[arg(long, conflicts_with_all = ["moments", "cumulants", "all"])]
    pub polytope: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["cumulants", "all"])]
    pub moments: Option<PathBuf>,
    #[arg(long, conflicts_with = "all")]
    pub cumulants: Option<PathBuf>,
    /// Random instances per relation when no data is given.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the family random instances are drawn from.
    #[arg(long)]
    pub family: Option<String>,
    /// Run relations concurrently. Output is identical either way.
    #[arg(long)]
    pub parallel: bool,
}
