//! Command-line driver wiring the toolkit into reproducible experiments.
//!
//! Exit codes: 0 success, 1 validation or assertion failure, 2 input
//! error, 3 resource guard.

mod cmd_find;
mod cmd_grid;
mod cmd_nu;
mod cmd_pet;
mod out;
mod parse;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError {
            code: 1,
            msg: msg.into(),
        }
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        CliError {
            code: 3,
            msg: msg.into(),
        }
    }

    pub fn from_poly(e: polyprime::polysys::PolyError) -> Self {
        use polyprime::polysys::PolyError::*;
        match e {
            Json(_) | ArityMismatch { .. } | DimensionMismatch { .. } | DuplicateNode(_)
            | DuplicateParameter | EmptySystem | UnknownNode(_) => CliError::input(e.to_string()),
            IterationCapExceeded(_) => CliError::resource(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }

    pub fn from_sieve(e: polyprime::sieve::SieveError) -> Self {
        use polyprime::sieve::SieveError::*;
        match e {
            InvalidEpsilon(_) | LimitTooSmall(_) | BadResidue { .. } | ResidueNotChosen
            | CacheFormat(_) | Io(_) => CliError::input(e.to_string()),
            FactorizationRangeExceeded { .. } => CliError::resource(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }

    pub fn from_grid(e: polyprime::grid::GridError) -> Self {
        use polyprime::grid::GridError::*;
        match e {
            BudgetExceeded { .. } => CliError::resource(e.to_string()),
            Io(_) | DimensionMismatch(_) => CliError::input(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }

    pub fn from_search(e: polyprime::search::SearchError) -> Self {
        use polyprime::search::SearchError::*;
        match e {
            TargetTooLarge { .. } => CliError::resource(e.to_string()),
            NonzeroConstantTerm { .. } | DimensionMismatch(_) => CliError::input(e.to_string()),
            Grid(g) => CliError::from_grid(g),
            Sieve(s) => CliError::from_sieve(s),
            OutOfRangeFunction => CliError::validation(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "polyprime",
    version,
    about = "Polynomial configurations in the prime lattice: linearization, sieve weights, box norms, search"
)]
struct Cli {
    /// Cap the worker pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Polynomial-system checks and linearization.
    Pet(cmd_pet::PetArgs),
    /// Majorant tables, correlations and shifted-product checks.
    Nu(cmd_nu::NuArgs),
    /// Local and averaged box norms of a grid function.
    Norm(cmd_grid::NormArgs),
    /// Dual function of a grid function along polynomial directions.
    Dual(cmd_grid::DualArgs),
    /// Bounded-model decomposition of a majorized grid function.
    Decompose(cmd_grid::DecomposeArgs),
    /// Brute-force configuration search over a target set.
    Find(cmd_find::FindArgs),
    /// Configuration average of weight grids along a pattern.
    Lambda(cmd_grid::LambdaArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = polyprime::exec::set_threads(t) {
            eprintln!("warning: could not set thread count: {}", e);
        }
    }
    let result = match cli.cmd {
        Cmd::Pet(a) => cmd_pet::run(a),
        Cmd::Nu(a) => cmd_nu::run(a),
        Cmd::Norm(a) => cmd_grid::run_norm(a),
        Cmd::Dual(a) => cmd_grid::run_dual(a),
        Cmd::Decompose(a) => cmd_grid::run_decompose(a),
        Cmd::Find(a) => cmd_find::run(a),
        Cmd::Lambda(a) => cmd_grid::run_lambda(a),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.msg);
        std::process::exit(e.code);
    }
}
