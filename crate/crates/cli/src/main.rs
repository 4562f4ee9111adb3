mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use tautkit::error::TautError;

#[derive(Parser, Debug)]
#[command(
    name = "tautkit",
    version,
    about = "Exact computations on moduli spaces of curves"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(flatten)]
    caps: Caps,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest degree for Hurwitz enumeration [default: 6 brute force, 12 transfer]
    #[arg(long, global = true)]
    max_degree: Option<u32>,

    /// Largest number of simple branch points [default: 10 brute force, 26 transfer]
    #[arg(long, global = true)]
    max_branch: Option<u32>,

    /// Largest 3g-3+n for graph enumeration
    #[arg(long, global = true, default_value_t = 8)]
    max_dim: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Bruteforce,
    Transfer,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hurwitz numbers H^g_α, or double Hurwitz numbers with --double
    Hurwitz {
        #[arg(long)]
        genus: u32,
        /// Profile over infinity, e.g. 3,1,1
        #[arg(long)]
        profile: String,
        #[arg(long)]
        disconnected: bool,
        /// Profile over zero
        #[arg(long)]
        double: Option<String>,
        #[arg(long, value_enum, default_value_t = Route::Bruteforce)]
        route: Route,
    },
    /// Intersection numbers <tau_k1 ... tau_kn>_g
    Psi {
        #[arg(long)]
        genus: u32,
        /// ψ-exponents, e.g. 2,2,2
        #[arg(long)]
        exps: String,
        /// Correlator cache file (overrides TAUTKIT_CACHE)
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Hodge integrals ∫ψ^a λ_k on M̄_{g,n} by interpolating Hurwitz numbers
    Hodge {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Route::Transfer)]
        route: Route,
    },
    /// ELSV formula evaluated forwards against a brute-force count
    Elsv {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        profile: String,
    },
    /// Faber's intersection number identities and the κ-monomials they fix
    Faber {
        #[arg(long)]
        genus: u32,
        /// Exponents d_1,...,d_n summing to g-2
        #[arg(long, conflicts_with = "solve")]
        d: Option<String>,
        #[arg(long)]
        solve: bool,
    },
    /// Stable dual graphs of genus g with n legs
    Graphs {
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
        #[arg(long, default_value_t = 0)]
        legs: u32,
        /// Keep only strata of this dimension
        #[arg(long)]
        dim: Option<i64>,
        #[arg(long)]
        disconnected: bool,
        /// Write the graphs to this file in DOT format
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print only the number of classes
        #[arg(long)]
        count: bool,
    },
    /// Lee's operator r_l on a combination of decorated graphs
    Rl {
        #[arg(long)]
        l: u32,
        /// Graph sum as JSON, or "-" for standard input
        #[arg(long, required_unless_present = "fixture", conflicts_with = "fixture")]
        input: Option<String>,
        #[arg(long, value_enum)]
        fixture: Option<Fixture>,
    },
    /// Orbifold Euler characteristics of M_g and M_{g,n}
    Euler {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        legs: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fixture {
    M05,
}

/// One result: the echoed inputs, the value and how it was obtained.
pub struct Record {
    pub command: &'static str,
    pub inputs: Value,
    pub value: Value,
    pub provenance: &'static str,
    pub text: String,
}

pub enum Failure {
    Taut(TautError),
    Mismatch(Record),
}

impl From<TautError> for Failure {
    fn from(e: TautError) -> Self {
        Failure::Taut(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(rec) => {
            emit(cli.format, &rec);
            ExitCode::SUCCESS
        }
        Err(Failure::Taut(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                TautError::ResourceCap { .. } => 3,
                TautError::Domain(_) | TautError::Parse(_) => 2,
                _ => 1,
            })
        }
        Err(Failure::Mismatch(rec)) => {
            emit(cli.format, &rec);
            eprintln!("error: {} values disagree", rec.command);
            ExitCode::from(1)
        }
    }
}

fn emit(format: Format, rec: &Record) {
    match format {
        Format::Text => print!("{}", rec.text),
        Format::Json => {
            let out = serde_json::json!({
                "command": rec.command,
                "inputs": rec.inputs,
                "value": rec.value,
                "provenance": rec.provenance,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serializable")
            );
        }
    }
}
