//! `rankflip`: command-line access to rankings, tree-minor certificates,
//! near-twin analysis and the sparsifier.
//!
//! Exit status: 0 success or true verdict, 1 false verdict (certificate
//! emitted), 2 usage, parse or precondition error, 3 scale cap exceeded.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "rankflip",
    version,
    about = "Vertex rankings and flip-based sparsification for sparse graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Graph file to read (default: stdin).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// File to write the main output to (default: stdout).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget of a single exhaustive search.
    #[arg(long, global = true, default_value_t = 50_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_nodes: u64,
    /// Candidate budget of enumeration drivers.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_branch: u64,
    /// Suppress the summary written to stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Tree,
    Halfgraph,
    Random,
    Complete,
    Bipartite,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Trees,
    Random,
    Halfgraph,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph.
    Gen {
        kind: GenKind,
        /// Tree depth.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Children per tree node.
        #[arg(long, default_value_t = 2)]
        branch: usize,
        /// Half-graph order.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Vertex count (random, complete, cycle; side size for bipartite).
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Subdivide every edge this many times.
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
    },
    /// Compute the (r, m)-rank of every vertex.
    Rank {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        /// Also print the separator found for each vertex.
        #[arg(long)]
        witness: bool,
    },
    /// Find T_{d,m} as an r-shallow topological minor.
    Certify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        /// Extract greedily from a high-rank vertex instead of searching.
        #[arg(long, requires = "vertex")]
        extract: bool,
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Near-twin graph NT_k or its components.
    Neartwin {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        components: bool,
    },
    /// Search for a semi-induced half-graph of order t.
    Halfgraph {
        #[arg(long)]
        t: usize,
    },
    /// Evaluate bound functions.
    Bounds(BoundsArgs),
    /// Locally almost bounded degree check.
    LabdCheck {
        /// High-degree count bound f(r).
        #[arg(long)]
        f: String,
        /// Degree bound d(r).
        #[arg(long)]
        d: String,
        /// Check radii up to this value only (default: n).
        #[arg(long)]
        r_max: Option<usize>,
    },
    /// (k, m)-near-covered check.
    NearCovered {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Exhaustive search; otherwise greedy, conclusive only when false.
        #[arg(long)]
        exact: bool,
    },
    /// Build the sparsifier S(G).
    Sparsify {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        h: u64,
        /// Write the graph here and the provenance to `<out>.prov`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover G from S(G) using its R/F marks.
    Recover,
    /// Check that recovery and the recovery formula both return the input.
    VerifyRoundtrip {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        h: u64,
    },
    /// Search small S-flips whose sparsifier passes a degree check.
    SflipSearch {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        h: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        d: String,
    },
    /// Write a deterministic corpus directory with a manifest.
    Corpus {
        family: Family,
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 3)]
        max_branch: usize,
        /// Largest subdivision count for trees.
        #[arg(long, default_value_t = 2)]
        max_r: usize,
        #[arg(long, default_value_t = 6)]
        max_t: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BoundsArgs {
    /// g(c, k, t).
    #[arg(long, value_name = "C,K,T")]
    pub g: Option<String>,
    /// h(k, t).
    #[arg(long, value_name = "K,T")]
    pub h: Option<String>,
    /// W(d, m, r).
    #[arg(long, value_name = "D,M,R")]
    pub w: Option<String>,
    /// m'(d, r, m).
    #[arg(long, value_name = "D,R,M")]
    pub m_prime: Option<String>,
    /// Excluded half-graph order m(2) k(2) + m(2) + 1.
    #[arg(long, value_name = "K2,M2")]
    pub ladder: Option<String>,
    /// Sparsifier threshold h(k(3), t) for t from (k(2), m(2)).
    #[arg(long, value_name = "K3,K2,M2")]
    pub theorem_h: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(verdict) => ExitCode::from(verdict as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_status(&err))
        }
    }
}
