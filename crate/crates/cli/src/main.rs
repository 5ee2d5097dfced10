use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lieharm::{Rational, Tolerance};
use lieharm_cli::commands::{self, Options, Report};
use lieharm_cli::CliError;

#[derive(Parser)]
#[command(
    name = "lieharm",
    version,
    about = "Harmonic and biharmonic homomorphisms of Riemannian Lie groups"
)]
struct Cli {
    /// Absolute and relative tolerance for every numeric comparison.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Exact rational arithmetic; file numbers must be integers or strings like "3/2".
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized recipe searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra spec and report U, Kill and bi-invariance.
    Check { path: PathBuf },
    /// Tension, bitension and flags of a homomorphism spec.
    Analyze { path: PathBuf },
    /// Harmonic cone of an algebra spec.
    Cone { path: PathBuf },
    /// Build the total space of semidirect data and write it as an algebra spec.
    Semidirect {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the example suite, list entries, or check one entry.
    Catalog {
        name: Option<String>,
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<f64>,
        #[arg(long, conflicts_with = "name")]
        list: bool,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let tol = Tolerance::new(cli.tol, cli.tol)?;
    let opts = Options {
        tol,
        seed: cli.seed,
    };
    macro_rules! dispatch {
        ($f:ident, $($arg:expr),*) => {
            if cli.exact { commands::$f::<Rational>($($arg),*) } else { commands::$f::<f64>($($arg),*) }
        };
    }
    match &cli.command {
        Command::Check { path } => dispatch!(check, path, &opts),
        Command::Analyze { path } => dispatch!(analyze, path, &opts),
        Command::Cone { path } => dispatch!(cone, path, &opts),
        Command::Semidirect { path, out } => dispatch!(semidirect, path, out.as_deref(), &opts),
        Command::Catalog { name, params, list } => {
            if cli.exact {
                return Err(lieharm::Error::FloatOnly.into());
            }
            match name {
                _ if *list => Ok(commands::catalog_list()),
                Some(n) => commands::catalog_entry(n, params, &opts),
                None => Ok(commands::catalog_suite(&opts)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                ),
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
