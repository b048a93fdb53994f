mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "arrfree",
    version,
    about = "Exact invariants and freeness certificates for central hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for independent checks; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Flats of the intersection lattice with their Möbius values.
    Lattice { file: PathBuf },
    /// Characteristic polynomial and its integer-root factorization.
    Charpoly { file: PathBuf },
    /// Decide freeness of D(A, m) and print the certificate.
    Free {
        /// Highest degree examined (default |m|).
        #[arg(long, value_name = "N")]
        dmax: Option<u32>,
        file: PathBuf,
    },
    /// Ziegler restriction onto a pivot hyperplane.
    Ziegler {
        #[arg(long, value_name = "N")]
        pivot: usize,
        file: PathBuf,
    },
    /// Hyperplane-section freeness criterion (ambient dimension at least 4).
    Yoshinaga {
        #[arg(
            long,
            value_name = "N",
            required_unless_present = "any",
            conflicts_with = "any"
        )]
        pivot: Option<usize>,
        /// Try every pivot.
        #[arg(long)]
        any: bool,
        file: PathBuf,
    },
    /// Write an arrangement file: `boolean L`, `braid L`, `generic L N` or
    /// `random L N [BOUND]`.
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
    },
    /// Run the built-in verification suites.
    Verify {
        /// Suite name, comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input; exit status 2.
    Input(String),
    /// A broken internal invariant or failed self-check; exit status 3.
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<arrfree_core::Error> for CliError {
    fn from(e: arrfree_core::Error) -> Self {
        match e {
            arrfree_core::Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// Printed even on success, e.g. a failing verification table.
    pub failure: Option<CliError>,
}

impl Output {
    pub fn new(text: String, json: serde_json::Value) -> Self {
        Output {
            text,
            json,
            failure: None,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let jobs = match cli.jobs {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    };
    let output = match cli.command {
        Command::Lattice { file } => commands::lattice(&file)?,
        Command::Charpoly { file } => commands::charpoly(&file)?,
        Command::Free { dmax, file } => commands::free(&file, dmax)?,
        Command::Ziegler { pivot, file } => commands::ziegler(&file, pivot)?,
        Command::Yoshinaga { pivot, any, file } => {
            commands::yoshinaga(&file, if any { None } else { pivot }, jobs)?
        }
        Command::Gen {
            family,
            params,
            seed,
        } => commands::gen(&family, &params, seed)?,
        Command::Verify { suite } => commands::verify(&suite, jobs)?,
    };
    let mut rendered = if cli.json {
        serde_json::to_string_pretty(&output.json).expect("JSON values serialize")
    } else {
        output.text
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    match output.failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Input(m) | CliError::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
