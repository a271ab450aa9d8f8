//! `ricci`: curvature, critical-edge solving, feasibility, gadget generation
//! and oracle cross-checks over edge-list files.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ricci_core::Error;

#[derive(Parser, Debug)]
#[command(name = "ricci", version, about = "Exact Ollivier-Ricci curvature and critical-edge solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curvature of selected edges, as JSON.
    Curvature(CurvatureArgs),
    /// Find a sign-flipping edit set.
    Solve(SolveArgs),
    /// Decide feasibility by applying every permissible edit.
    Feasible(FeasibleArgs),
    /// Write a gadget instance and its JSON descriptor.
    Gadget(GadgetArgs),
    /// Compare the matching, flow and enumeration routes on every edge.
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug)]
struct CurvatureArgs {
    /// Edge-list file.
    path: PathBuf,
    /// Query edge; repeat for several.
    #[arg(long, num_args = 2, value_names = ["U", "V"], action = clap::ArgAction::Append)]
    edge: Vec<usize>,
    /// Every edge of the graph, in sorted order.
    #[arg(long, conflicts_with = "edge")]
    all: bool,
    /// Worker threads for independent edges.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = RouteArg::Matching)]
    route: RouteArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Matching,
    Flow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Greedy,
    Randomized,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StartArg {
    Adversarial,
    Optimal,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Edge-list file; omit with --tightness.
    #[arg(required_unless_present = "tightness")]
    path: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["U", "V"], required_unless_present = "tightness")]
    edge: Vec<usize>,
    /// Problem variant, e.g. uw-rt-ins-ntp.
    #[arg(long, required_unless_present = "tightness")]
    variant: Option<String>,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Seed; required for the randomized method.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest edit set tried by brute force.
    #[arg(long, default_value_t = 6)]
    max_k: usize,
    /// Run on the tightness cost matrix with this even m instead of a graph.
    #[arg(long, conflicts_with_all = ["path", "edge", "variant"])]
    tightness: Option<usize>,
    /// Starting matching for greedy on the tightness matrix.
    #[arg(long, value_enum, default_value_t = StartArg::Adversarial, requires = "tightness")]
    start: StartArg,
}

#[derive(Args, Debug)]
struct FeasibleArgs {
    path: PathBuf,
    #[arg(long, num_args = 2, value_names = ["U", "V"], required = true)]
    edge: Vec<usize>,
    #[arg(long)]
    variant: String,
}

#[derive(Args, Debug)]
struct GadgetArgs {
    #[command(subcommand)]
    kind: GadgetCommand,
    /// Output path; the descriptor goes to the same path with `.json` appended.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GadgetCommand {
    /// Maximum-coverage gadget.
    Maxcov {
        #[arg(long)]
        universe: usize,
        /// Sets as `0,1;1,2,3`.
        #[arg(long)]
        sets: String,
        #[arg(long)]
        kappa: usize,
    },
    /// Perfect-matching blocker gadget.
    Blocker {
        #[arg(long)]
        n: usize,
        /// Bipartite edges as `left-right` pairs, e.g. `0-0,0-1,1-1`.
        #[arg(long)]
        edges: String,
    },
    /// Set-cover gadget; the universe size must be even.
    Setcover {
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        sets: String,
        /// Heavy edge weight; defaults to (n + m + 1)^3 + 1.
        #[arg(long)]
        heavy: Option<u64>,
    },
    /// Cost matrix on which greedy needs twice the optimum.
    Tightness {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Edge-list file to check.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    path: Option<PathBuf>,
    /// Random sweep: largest node count, number of graphs, seed.
    #[arg(long, num_args = 3, value_names = ["N", "TRIALS", "SEED"])]
    random: Vec<u64>,
}

/// Process exit codes.
mod exit {
    pub const PARSE: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
    pub const USAGE: u8 = 4;
    pub const VERIFICATION: u8 = 5;
}

/// A failed command with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: exit::USAGE, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Self { code: exit::PARSE, message: message.into() }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Self { code: exit::INFEASIBLE, message: message.into() }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self { code: exit::VERIFICATION, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => exit::PARSE,
            Error::NoSolution(_) | Error::RetryExhausted(_) => exit::INFEASIBLE,
            Error::Verification(_) => exit::VERIFICATION,
            _ => exit::USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Curvature(args) => commands::curvature(&args),
        Command::Solve(args) => commands::solve(&args),
        Command::Feasible(args) => commands::feasible(&args),
        Command::Gadget(args) => commands::gadget(&args),
        Command::OracleCheck(args) => commands::oracle_check(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
