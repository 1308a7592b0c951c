use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod options;
mod recipes;

use options::{BenchmarkArgs, ConfigFile, ModesArgs, ScanArgs, SolveArgs};

/// Eigenmodes of clamped circular membranes with a smoothly loaded patch.
#[derive(Debug, Parser)]
#[command(name = "drumhead", version)]
struct Cli {
    /// TOML file with [solve], [scan], [modes] and [benchmark] tables using
    /// the flag names as keys; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum of one loading, with labels and cents deviations.
    Solve(SolveArgs),
    /// Harmonicity map or spectra along a parameter sweep.
    Scan(ScanArgs),
    /// Export eigenfunction fields as CSV.
    Modes(ModesArgs),
    /// Compare the uniform membrane with Bessel zeros.
    Benchmark(BenchmarkArgs),
}

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Solver(String),
    Benchmark(String),
}

impl Failure {
    pub fn invalid(message: impl std::fmt::Display) -> Self {
        Failure::Invalid(format!("invalid parameter: {message}"))
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Benchmark(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Solver(m) => f.write_str(m),
            Failure::Benchmark(m) => write!(f, "benchmark failed: {m}"),
        }
    }
}

impl From<drumhead::Error> for Failure {
    fn from(e: drumhead::Error) -> Self {
        if e.is_invalid_parameter() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Solver(e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Solve(args) => commands::solve(args.over(file.solve)),
        Command::Scan(args) => commands::scan(args.over(file.scan)),
        Command::Modes(args) => commands::modes(args.over(file.modes)),
        Command::Benchmark(args) => commands::benchmark(args.over(file.benchmark)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
