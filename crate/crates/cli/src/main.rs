//! `cover13`: build, verify and scan the (1,3) coordinate rings from the
//! command line.
//!
//! Exit codes: 0 success, 1 verification failed (the report carries a
//! witness), 2 invalid input.

mod commands;
mod render;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cover13", version, about = "Exact (1,3) coordinate rings: construction, verification, moduli")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// q, qw or fp:<p>
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// seed for every randomized choice
    #[arg(long, global = true, default_value_t = cover13_acceptance::DEFAULT_SEED)]
    pub seed: u64,
    /// worker threads for scans (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generators of the coordinate ring
    Ring {
        #[command(subcommand)]
        action: RingCmd,
    },
    /// Fiber algebras at points of the plane
    Fiber(FiberArgs),
    /// Branch locus restricted to a line
    Branch {
        #[command(subcommand)]
        action: BranchCmd,
    },
    /// The S3 action on (a0, a1, a3) and its invariants
    Moduli {
        #[command(subcommand)]
        action: ModuliCmd,
    },
    /// Twist classifications
    Classify {
        #[command(subcommand)]
        action: ClassifyCmd,
    },
    /// The irregular (1,2,3)-weighted variant
    Irregular {
        #[command(subcommand)]
        action: IrregularCmd,
    },
    /// Run the acceptance suite
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// a0,a1,a2,a3 (integers, p/q, or a+b*w over qw)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// b0,b1,b2,b3
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// chart u0, u1 or u2
    #[arg(long, default_value = "u2")]
    pub chart: String,
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// Print the nine generators (one per line in text mode)
    Build(ParamArgs),
    /// Moduli equation, homogeneity and equivariance
    Verify(ParamArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FiberArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// x0,x1,x2; random points are drawn when absent
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// number of random points
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum BranchCmd {
    /// Interpolate the trace discriminant along a line
    Scan(BranchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BranchArgs {
    /// use the Birkenhake-Lange family with this lambda
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["alpha", "beta"])]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "beta")]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    pub beta: Option<String>,
    /// p0,p1,p2;q0,q1,q2; a random line is drawn when absent
    #[arg(long, allow_hyphen_values = true)]
    pub line: Option<String>,
    /// degree bound in the line parameter
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ModuliCmd {
    /// delta coordinates, invariants and the bielliptic test
    Invariants(InvariantArgs),
    /// Move beta to (0,1,1,0)
    Normalize(NormalizeArgs),
    /// Whether two points lie on one S3 orbit
    Equivalent(EquivalentArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InvariantArgs {
    /// a0,a1,a3 or, together with --beta, a full a0,a1,a2,a3
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct NormalizeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Args, Debug, Clone)]
pub struct EquivalentArgs {
    /// a0,a1,a3
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// a0,a1,a3
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    /// The nine (m, n) two-copy twists
    Twists,
}

#[derive(Subcommand, Debug)]
pub enum IrregularCmd {
    /// Generators for a c-table (random when --c1/--c3 are absent)
    Build(IrregularArgs),
}

#[derive(Args, Debug, Clone)]
pub struct IrregularArgs {
    /// c10;c11;c12;c13 as quadrics in x0, x1, x2
    #[arg(long, allow_hyphen_values = true, requires = "c3")]
    pub c1: Option<String>,
    /// c30;c31;c32;c33 as quartics in x0, x1, x2
    #[arg(long, allow_hyphen_values = true, requires = "c1")]
    pub c3: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SelftestArgs {
    /// comma-separated criterion numbers (default: all)
    #[arg(long)]
    pub only: Option<String>,
    /// include wall times (output is then no longer reproducible)
    #[arg(long)]
    pub timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global();
    }
    let outcome = commands::run(&cli);
    let code = outcome.exit_code();
    match outcome {
        commands::Outcome::Invalid(msg) => eprintln!("error: {msg}"),
        other => print!("{}", render::render(&cli, &other)),
    }
    ExitCode::from(code)
}
