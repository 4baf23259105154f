//! Command-line front end.
//!
//! Exit codes: 0 success, 1 physics or verification failure, 2 usage or
//! configuration error.

pub mod config;
pub mod modes;
pub mod report;
pub mod sweep;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::error::Error as PhysicsError;
use crate::media::GyroelectricTensor;
use config::{ConfigError, ExperimentConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv failure: {0}")]
    Csv(#[from] csv::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Physics(_) | CliError::Verification(_) => 1,
            CliError::Config(_) | CliError::Usage(_) | CliError::Io(_) | CliError::Csv(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "vacphase", version, about = "Quantum-vacuum geometric phases in coiled gyroelectric fibres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase breakdown for one experiment.
    Phase {
        #[arg(long)]
        config: PathBuf,
        /// Show angles and phases in degrees (text report only).
        #[arg(long)]
        degrees: bool,
        /// Also show phases wrapped into (-pi, pi].
        #[arg(long)]
        wrap: bool,
        /// Emit the machine-readable JSON record instead of the text report.
        #[arg(long)]
        json: bool,
    },
    /// Parameter sweep to CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the Fock-space oracle suite; exit 0 iff every check passes.
    Verify {
        /// Experiment config; the built-in 3-4-5 example when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the permittivity tensor and its circular eigenmodes.
    Modes {
        #[arg(long, allow_hyphen_values = true)]
        eps1: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps2: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps3: f64,
    },
}

fn load_experiment(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = config::read_text(path)?;
    Ok(config::parse_experiment(&text)?)
}

pub fn execute<W: Write>(command: Command, out: &mut W) -> Result<(), CliError> {
    match command {
        Command::Phase { config, degrees, wrap, json } => {
            let cfg = load_experiment(&config)?;
            let exp = cfg.validate()?;
            let record = report::compute(&cfg, &exp)?;
            if json {
                serde_json::to_writer_pretty(&mut *out, &record).map_err(std::io::Error::from)?;
                writeln!(out)?;
            } else {
                write!(out, "{}", report::render(&record, report::DisplayOptions { degrees, wrapped: wrap }))?;
            }
        }
        Command::Sweep { config, out: path } => {
            let text = config::read_text(&config)?;
            let spec = config::parse_sweep(&text)?;
            let threads = sweep::thread_cap()?;
            let file = File::create(&path)?;
            let rows = sweep::run_sweep(&spec, threads, BufWriter::new(file))?;
            writeln!(out, "wrote {rows} rows to {}", path.display())?;
        }
        Command::Verify { config, json } => {
            let cfg = match config {
                Some(p) => load_experiment(&p)?,
                None => ExperimentConfig::default(),
            };
            let exp = cfg.validate()?;
            let report = verify::run_checks(&exp);
            if json {
                serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from)?;
                writeln!(out)?;
            } else {
                for c in &report.checks {
                    writeln!(
                        out,
                        "{} {:<30} measured {:<24} threshold {:<22} {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        format!("{:.6e}", c.measured),
                        c.threshold,
                        c.detail
                    )?;
                }
            }
            if !report.passed() {
                let names: Vec<&str> = report.failures().map(|c| c.name).collect();
                return Err(CliError::Verification(names.join(", ")));
            }
        }
        Command::Modes { eps1, eps2, eps3 } => {
            let medium = GyroelectricTensor::new(eps1, eps2, eps3)
                .map_err(|e| CliError::Config(ConfigError::new("eps", e.to_string())))?;
            write!(out, "{}", modes::render(&medium))?;
        }
    }
    Ok(())
}

/// Parses `args`, runs the command, reports errors on `err`; returns the
/// process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
