//! Command-line front end for `infobound`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numeric
//! failure, 3 report tolerance failure.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::commands::{BoundArgs, CosmoArgs, PredictCommand, QubitArgs, VacuumArgs};
use crate::config::{ConfigError, Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

macro_rules! numeric_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Numeric(e.to_string())
            }
        }
    )*};
}

numeric_from!(
    infobound::units::UnitsError,
    infobound::cosmology::CosmologyError,
    infobound::bounds::BoundsError,
    infobound::vacuum::VacuumError,
    infobound::quantum::QuantumError,
    infobound::predictability::PredictabilityError,
    serde_json::Error
);

#[derive(Debug, Parser)]
#[command(name = "infobound", version, about = "Cosmological information bounds and their consequences")]
pub struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized commands; overrides the config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Particle horizon, event horizon and Hubble radius at scale factor a.
    Cosmo(CosmoArgs),
    /// Information bound from a horizon area, t² scaling or a black hole.
    Bound(BoundArgs),
    /// Vacuum energy density under each cutoff scheme, or a conservation series.
    Vacuum(VacuumArgs),
    /// Complexity growth of a qubit register under noise.
    Qubit(QubitArgs),
    /// Predictability horizons.
    #[command(subcommand)]
    Predict(PredictCommand),
    /// Every headline figure against its target; exits 3 on a miss.
    Report,
    /// Print the effective configuration.
    Config,
}

/// Effective settings after merging the config file and global flags.
#[derive(Debug, Clone)]
pub struct Context {
    pub config: RunConfig,
    pub format: Format,
    pub seed: u64,
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, exit_code: 0 }
    }
}

pub fn context(cli: &Cli) -> Result<Context, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    config.format = cli.format.unwrap_or(config.format);
    config.seed = cli.seed.unwrap_or(config.seed);
    Ok(Context {
        format: config.format,
        seed: config.seed,
        config,
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::Cosmo(args) => commands::cosmo(&ctx, args).map(Outcome::ok),
        Command::Bound(args) => commands::bound(&ctx, args).map(Outcome::ok),
        Command::Vacuum(args) => commands::vacuum(&ctx, args).map(Outcome::ok),
        Command::Qubit(args) => commands::qubit(&ctx, args).map(Outcome::ok),
        Command::Predict(cmd) => commands::predict(&ctx, cmd).map(Outcome::ok),
        Command::Report => {
            let rows = report::build_report(&ctx.config)?;
            let stdout = match ctx.format {
                Format::Text => report::render_text(&rows),
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            let exit_code = if report::failures(&rows) > 0 { 3 } else { 0 };
            Ok(Outcome { stdout, exit_code })
        }
        Command::Config => Ok(Outcome::ok(match ctx.format {
            Format::Text => ctx.config.to_config_text(),
            Format::Json => serde_json::to_string_pretty(&ctx.config)? + "\n",
        })),
    }
}
