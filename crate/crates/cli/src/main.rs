//! `drinfeld`: invariant factors, torsion and rationality for Drinfeld
//! modules given as JSON, plus operation-count benchmarks.
//!
//! Every command except `bench` writes one JSON report to stdout and a short
//! summary to stderr.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Invariant factors of Drinfeld modules over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariant factors and generators of the module of points φ(K).
    Points(InputArgs),
    /// Structure of the kernel of a morphism.
    Kernel {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "FILE")]
        morphism: std::path::PathBuf,
    },
    /// Structure of the a-torsion φ[a] ∩ K.
    Torsion {
        #[command(flatten)]
        input: InputArgs,
        /// Polynomial in T as a JSON coefficient array, e.g. "[0,1]".
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value_t = Strategy::FromPoints)]
        strategy: Strategy,
    },
    /// g_φ and the largest rational p-power torsion.
    RationalLcm(InputArgs),
    /// Whether φ[a] is contained in K.
    IsRational {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        a: String,
    },
    /// Operation counts of the naive and multipoint matrix of φ_T, as CSV.
    Bench(BenchArgs),
    /// Brute-force cross-checks on a given module or on random ones.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Module specification JSON.
    #[arg(long, value_name = "FILE")]
    input: std::path::PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    Direct,
    FromPoints,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Naive,
    Multipoint,
    Both,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 8)]
    dmin: usize,
    #[arg(long, default_value_t = 64)]
    dmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    /// Write wall_ns as 0 so output depends on the seed only.
    #[arg(long)]
    deterministic: bool,
    /// Emit a JSON report instead of CSV.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_name = "FILE", conflicts_with_all = ["q", "d", "r", "count"])]
    input: Option<std::path::PathBuf>,
    #[arg(long, value_name = "FILE", requires = "input")]
    morphism: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl From<Method> for Vec<drinfeld::meval::MatrixMethod> {
    fn from(m: Method) -> Self {
        use drinfeld::meval::MatrixMethod::*;
        match m {
            Method::Naive => vec![Naive],
            Method::Multipoint => vec![Multipoint],
            Method::Both => vec![Naive, Multipoint],
        }
    }
}
