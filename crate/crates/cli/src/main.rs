//! `nakayama`: certify quadratic algebras and compute Nakayama automorphisms
//! of their graded Ore extensions from a JSON problem document.

mod commands;
mod input;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nakayama_core::ore::CheckLevel;
use nakayama_core::{Error, ErrorCategory};

use commands::{CatalogRequest, Settings};
use input::ProblemSpec;

#[derive(Parser)]
#[command(name = "nakayama", version, about = "Nakayama automorphisms of graded Ore extensions, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Highest internal degree in which the Koszul complex is checked (default d + 3).
    #[arg(long, global = true)]
    koszul_bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Report)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Level::Fast)]
    check_level: Level,
}

#[derive(Subcommand)]
enum Command {
    /// Certify Koszulity and AS-regularity up to the bound.
    Certify(InputArgs),
    /// The Nakayama automorphism μ_A, and hdet(σ) when σ is given.
    Nakayama(InputArgs),
    /// The full pipeline for B = A[z; σ, δ].
    Ore(InputArgs),
    /// ω, ω̂ and the derivation-quotient checks.
    Superpotential(InputArgs),
    /// Build a catalog instance, run the pipeline and compare with its closed form.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Problem document; `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct CatalogArgs {
    /// poly, commutative, quantum-plane or jordan.
    #[arg(long)]
    family: Option<String>,
    /// Number of variables for poly.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Case id such as qneq-1-a or jordan-b.
    #[arg(long)]
    case: Option<String>,
    /// name=value; repeatable.
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Report,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Paranoid,
}

fn load(path: &PathBuf) -> Result<ProblemSpec, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    ProblemSpec::from_json(&text)
}

fn exit_code(e: &Error) -> u8 {
    match e.category() {
        ErrorCategory::Input => 1,
        ErrorCategory::Certification => 2,
        ErrorCategory::Admissibility => 3,
        ErrorCategory::Internal => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let settings = Settings {
        koszul_bound: cli.koszul_bound,
        level: match cli.check_level {
            Level::Fast => CheckLevel::Fast,
            Level::Paranoid => CheckLevel::Paranoid,
        },
    };
    let result = match &cli.command {
        Command::Certify(a) => load(&a.input).and_then(|s| commands::cmd_certify(&s, settings)),
        Command::Nakayama(a) => load(&a.input).and_then(|s| commands::cmd_nakayama_a(&s, settings)),
        Command::Ore(a) => load(&a.input).and_then(|s| commands::cmd_ore(&s, settings)),
        Command::Superpotential(a) => load(&a.input).and_then(|s| commands::cmd_superpotential(&s, settings)),
        Command::Catalog(a) => {
            let req = CatalogRequest {
                family: a.family.clone(),
                n: a.n,
                q: a.q.clone(),
                case: a.case.clone(),
                params: a.params.clone(),
            };
            commands::cmd_catalog(&req, settings)
        }
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Report => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            match commands::failed_check(&report) {
                Some(why) => {
                    eprintln!("error: {why}");
                    ExitCode::from(4)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
