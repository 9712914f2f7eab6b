//! `cancellative-lab`: command-line access to cancellative-core.
//!
//! Exit status: 0 success, 1 a property that must hold failed, 2 usage or
//! input error, 3 budget or time limit exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cancellative_core::Error;

#[derive(Parser, Debug)]
#[command(name = "cancellative-lab", version, about = "Cancellative triple systems, Steiner triple systems and extremal search")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// worker threads for parallel searches
    #[arg(long, global = true, default_value_t = default_workers(), value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: u16,
    /// directory for cached STS catalogs
    #[arg(long, global = true, env = "CANCELLATIVE_LAB_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// wall-clock limit in seconds
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// neither read nor write the catalog cache
    #[arg(long, global = true)]
    pub no_cache: bool,
}

fn default_workers() -> u16 {
    std::thread::available_parallelism().map_or(1, |n| n.get().min(u16::MAX as usize) as u16)
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Steiner triple systems
    #[command(subcommand)]
    Sts(StsCmd),
    /// Predicates and inequalities on input files
    #[command(subcommand)]
    Check(CheckCmd),
    /// Shadow of a triple system, in .g2 format
    Shadow {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blowup of an STS (or of any .h3 base) by a part vector
    Blowup {
        #[command(flatten)]
        base: BaseArgs,
        /// part sizes, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether a triple system is S-colorable for a catalogued S
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Fewest edge deletions making a system STS(k)-colorable
    Distance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// seeded local search instead of the exact search
        #[arg(long)]
        local: bool,
        #[arg(long, default_value_t = 50)]
        restarts: u32,
    },
    /// Maximal clique expansion of a graph
    Expand {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        kappa: usize,
        /// every maximal expansion instead of the greedy one
        #[arg(long)]
        all: bool,
    },
    /// Exact extremal searches
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Feasible region sampling and the boundary curve
    #[command(subcommand)]
    Region(RegionCmd),
    /// Probes around the Steiner points
    #[command(subcommand)]
    Probe(ProbeCmd),
    /// Perturbation experiments on Steiner blowups
    #[command(subcommand)]
    Stability(StabilityCmd),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BaseArgs {
    /// use the catalogued STS(k)
    #[arg(long)]
    pub k: Option<usize>,
    /// a base system read from an .h3 file (must be an STS)
    #[arg(long)]
    pub base: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum StsCmd {
    /// Enumerate STS(k) up to isomorphism
    Enum {
        #[arg(long)]
        k: usize,
        /// also write the catalog file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of isomorphism classes of STS(k)
    Count {
        #[arg(long)]
        k: usize,
    },
    /// Largest STS(k) blowup on n vertices
    Snk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SnkModeArg::Auto)]
        mode: SnkModeArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SnkModeArg {
    Auto,
    Exhaustive,
    NearBalanced,
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Cancellativity, with a witness when it fails
    Cancellative {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The two shadow inequalities, or a large-n bound when --k is given
    Bounds {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// thm41, lem41, lem42 or lem43
        #[arg(long, default_value = "thm41", requires = "k")]
        variant: String,
        /// constant for thm41, as p/q or decimal
        #[arg(long, requires = "k")]
        c: Option<String>,
    },
    /// The pair inequalities for a cancellative pair (G, H)
    Pair {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// thresholds for the clique expansions
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        kappa: Vec<usize>,
    },
    /// The quadratic inequality on the simplex
    Simplex {
        /// coordinates, comma separated (p/q or decimals)
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        x: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtremalCmd {
    /// Largest cancellative system on n vertices
    Max {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Largest cancellative system whose shadow lies in (or equals) G
    ShadowMax {
        #[command(flatten)]
        host: HostArgs,
        /// require the shadow to be all of G
        #[arg(long)]
        equality: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// lex or reverse-degree
    #[arg(long, default_value = "lex")]
    pub order: String,
    /// resumable progress file
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// starting threshold
    #[arg(long)]
    pub threshold: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct HostArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// K_n
    #[arg(long)]
    pub complete: Option<usize>,
    /// T_2(n, l), given as n,l
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub turan: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum RegionCmd {
    /// Density points of blowups and Turán constructions
    Sample {
        #[arg(long, value_delimiter = ',', default_value = "3,7,9")]
        k: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        max_part: usize,
    },
    /// min{x^{3/2}/sqrt 6, x(1-x)} on a grid, or at one point
    Curve {
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        x: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProbeCmd {
    /// Edge density just left or right of x = (k-1)/k
    LocalMax {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        side: String,
        /// constant for the left side
        #[arg(long)]
        c: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum StabilityCmd {
    /// Random deletions from balanced blowups, then exact deletion distance
    Run {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deletions: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::NotCancellative(_)
        | Error::CancellativityViolation(_)
        | Error::ShadowNotContained(_)
        | Error::AssertionFailed(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.config.workers as usize).build_global() {
        eprintln!("error: could not start the worker pool: {e}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(out) => match output::emit(&out, cli.config.format) {
            Ok(()) => ExitCode::from(if out.failed { 1 } else { 0 }),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
