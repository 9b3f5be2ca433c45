//! The `construct` command line: one subcommand per operation family, JSON out.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

mod commands;
pub mod error;
mod input;
pub mod pretty;

pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "construct", version, about = "Constructs, formula complexity and system solvers")]
pub struct Cli {
    /// Print aligned text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the parallel enumeration paths.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two or three constructs under a named instance.
    Cprod(CprodArgs),
    /// Arithmetic strata A_1 … A_n.
    EnumArith(EnumArithArgs),
    /// Least formula size of a value.
    Complexity(ComplexityArgs),
    /// Boolean formulas by size with their lex numbers.
    EnumBool(EnumBoolArgs),
    /// Lex number and polynomial of one boolean formula.
    Bool2int(Bool2IntArgs),
    /// Solve a linear, log-linear, base-exponent, Sylvester or mixed system.
    Solve(SolveArgs),
    /// Lagrange, two-point and finite-field interpolation.
    Interp(InterpArgs),
    /// Count solutions of A·x = b over F_p.
    GfCount(GfCountArgs),
    /// Expand polynomial roots around a center by fixed-point iteration.
    Roots(RootsArgs),
    /// Check the exp/log pseudo-inverse pair and its spectral constructions.
    SpectralVerify(SpectralArgs),
}

#[derive(Debug, Args)]
pub struct CprodArgs {
    /// Instance tag such as sum-prod, or-and, min-plus; functional-sum or functional-product for funcexpr documents.
    #[arg(long)]
    pub alg: String,
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// Third operand for order-3 products.
    #[arg(long)]
    pub c: Option<PathBuf>,
    /// Composer for funcexpr documents.
    #[arg(long, value_parser = ["primal", "dual"], default_value = "primal")]
    pub side: String,
    /// Collapse block entries to their traces.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct EnumArithArgs {
    #[arg(long)]
    pub max_size: usize,
    /// Only the input 1.
    #[arg(long)]
    pub monotone: bool,
    /// Merge candidates in a random order drawn from --seed.
    #[arg(long)]
    pub shuffle: bool,
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    /// An exact value: integer, p/q, or a + b*I.
    #[arg(long, allow_hyphen_values = true)]
    pub value: String,
    #[arg(long, default_value_t = 13)]
    pub max_size: usize,
    #[arg(long)]
    pub monotone: bool,
}

#[derive(Debug, Args)]
pub struct EnumBoolArgs {
    #[arg(long)]
    pub max_size: usize,
}

#[derive(Debug, Args)]
pub struct Bool2IntArgs {
    /// Formula such as "['AND', x0, ['NOT', x1]]".
    #[arg(long)]
    pub formula: String,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Minimize the residual instead of solving exactly.
    #[arg(long)]
    pub least_squares: bool,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long)]
    pub points: PathBuf,
    /// Interpolate multiplicatively: f = Π bᵢ^{Lᵢ}.
    #[arg(long)]
    pub multiplicative: bool,
    /// Evaluation points; comma-separated coordinates for two-point data.
    #[arg(long, allow_hyphen_values = true)]
    pub query: Vec<String>,
}

#[derive(Debug, Args)]
pub struct GfCountArgs {
    #[arg(long)]
    pub p: u64,
    /// Rows separated by ';', entries by ','.
    #[arg(long)]
    pub matrix: String,
    #[arg(long)]
    pub rhs: String,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// Center coordinates a0,a1,… (complex entries as 1+2i).
    #[arg(long, allow_hyphen_values = true)]
    pub center: String,
    #[arg(long, default_value_t = 1000)]
    pub tmax: usize,
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
    /// Also label the limit by nearest-root cells.
    #[arg(long)]
    pub probe: bool,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

pub fn execute(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Cprod(a) => commands::products::cprod(a),
        Command::EnumArith(a) => commands::formulas::enum_arith(a, cli.seed),
        Command::Complexity(a) => commands::formulas::complexity(a),
        Command::EnumBool(a) => commands::formulas::enum_bool(a),
        Command::Bool2int(a) => commands::formulas::bool2int(a),
        Command::Solve(a) => commands::solve::solve(a),
        Command::Interp(a) => commands::interp::interp(a),
        Command::GfCount(a) => commands::interp::gf_count(a),
        Command::Roots(a) => commands::roots::roots(a),
        Command::SpectralVerify(a) => commands::spectral::verify(a, cli.seed),
    }
}

pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        pretty::render(v)
    } else {
        format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize"))
    }
}
