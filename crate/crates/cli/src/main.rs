//! `pdm-spectra`: closed-form spectra of position-dependent-mass charges in
//! magnetic and Aharonov-Bohm fields, checked against a finite-difference
//! oracle.
//!
//! Exit codes: 0 success, 2 configuration error, 3 validation failure,
//! 4 numerical failure.

mod commands;
mod config;
mod output;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{ConfigError, Format, JobConfig};

#[derive(Parser)]
#[command(name = "pdm-spectra", version, about = "PDM spectra in magnetic and Aharonov-Bohm fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// JSON job file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    config: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the `format` key of the job.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energies for every level in the ranges.
    Spectrum(Io),
    /// Closed forms against the finite-difference oracle.
    Validate(Io),
    /// Samples of R(ρ), Z(z) and |ψ|² at φ = 0 for one level.
    Wavefunction(Io),
    /// Values of δ̃ that truncate the biconfluent Heun series at degree n.
    HeunTerminate {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn read_config(path: &str) -> Result<JobConfig, ConfigError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| ConfigError(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("reading {path}: {e}")))?;
    }
    JobConfig::parse(&text)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    type Cmd = fn(&config::Job, Format) -> Result<commands::Outcome>;
    let (io, cmd): (Io, Cmd) = match cli.command {
        Command::HeunTerminate { alpha, beta, n, out, format } => {
            let outcome = commands::heun_terminate(alpha, beta, n, format)?;
            emit(&outcome.text, out.as_ref())?;
            return Ok(outcome.code);
        }
        Command::Spectrum(io) => (io, commands::spectrum),
        Command::Validate(io) => (io, commands::validate),
        Command::Wavefunction(io) => (io, commands::wavefunction),
    };
    let job = read_config(&io.config)?.check()?;
    let format = io.format.or(job.raw.format).unwrap_or(Format::Csv);
    let outcome = cmd(&job, format)?;
    emit(&outcome.text, io.out.as_ref())?;
    Ok(outcome.code)
}

/// Configuration problems are 2, everything numerical is 4.
fn exit_code(err: &anyhow::Error) -> u8 {
    use pdm_core::Error as E;
    for cause in err.chain() {
        if cause.is::<ConfigError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Config(_) | E::Domain(_) | E::OutOfRange { .. } | E::NoBoundState(_) | E::HeunBranch(_) => 2,
                _ => 4,
            };
        }
    }
    4
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
