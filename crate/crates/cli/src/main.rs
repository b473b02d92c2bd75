mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tightcheck", version, about = "Tightness of combinatorial manifolds: criteria, bounds and searches")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "TIGHTCHECK_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TightMode {
    /// Injectivity of every induced subcomplex inclusion.
    Exhaustive,
    /// 2-neighbourliness plus the average link σ₀ criterion (3-manifolds).
    Bd,
    /// Perfection of every vertex ordering (at most 9 vertices).
    Rsl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Face numbers, Betti numbers, neighbourliness, orientability and manifold check.
    Analyze { file: PathBuf },

    /// Decide tightness.
    Tight {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TightMode::Exhaustive)]
        mode: TightMode,
        /// Field characteristic.
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u32,
    },

    /// Slicings separating K vertices of a closed 3-manifold.
    #[command(group(ArgGroup::new("what").args(["all", "avg"])))]
    Slicings {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// One row per bipartition.
        #[arg(long)]
        all: bool,
        /// Brute-force averages next to the closed formulas (default).
        #[arg(long)]
        avg: bool,
    },

    /// Vertex bound for tight (ℓ-1)-connected (2ℓ+1)-manifolds.
    #[command(group(ArgGroup::new("which").required(true).args(["table", "ell"])))]
    Bound {
        /// Grid of maximal vertex counts, β = 0..=10 against d = 3..=31.
        #[arg(long)]
        table: bool,
        /// Collapse entries equal to the one above into a ditto mark.
        #[arg(long, requires = "table")]
        ditto: bool,
        #[arg(long, requires = "n")]
        ell: Option<u32>,
        #[arg(long, requires = "ell")]
        n: Option<u32>,
    },

    /// f-vector of the boundary of the cyclic (2ℓ+2)-polytope on N vertices.
    Cyclic {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        n: u32,
        /// Also count faces of the Gale-evenness boundary complex.
        #[arg(long)]
        oracle: bool,
    },

    /// Exhaustive check of the binomial identities behind the bound.
    Identities {
        #[arg(long, num_args = 2, value_names = ["LMAX", "NMAX"], required = true)]
        sweep: Vec<u32>,
    },

    /// Enumerate triangulated 2-spheres with N vertices into a catalog file.
    Spheres {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },

    /// σ₀ of every sphere in a catalog.
    Sigma {
        #[arg(long)]
        catalog: PathBuf,
        /// Print (value, multiplicity) pairs instead of one row per sphere.
        #[arg(long)]
        distribution: bool,
    },

    /// Spheres of a catalog with Property T_K.
    Tk {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        k: u32,
    },

    /// Classify tight combinatorial 3-manifolds with β₁ = B (0, 1 or 2).
    Search {
        #[arg(long)]
        beta1: u32,
        /// Write the per-combination TSV here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 when a size cap was hit, 1 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    let capped = e
        .chain()
        .any(|c| matches!(c.downcast_ref::<tightcheck::Error>(), Some(tightcheck::Error::CapExceeded { .. })));
    if capped {
        2
    } else {
        1
    }
}
