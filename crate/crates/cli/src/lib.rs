//! `nlrabi`: spectra of the two-photon, two-mode and intensity-dependent
//! Rabi models from their unified su(1,1) form.
//!
//! Subcommands: `isolated`, `spectrum`, `gfun`, `coeffs`, `diag`. Exit
//! codes: 0 success, 1 usage error, 2 numerical or I/O failure.

use clap::Parser;

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config, invalid physical parameters.
    Usage(String),
    /// Numerical failure or I/O error while running.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<nlrabi_core::CoreError> for CliError {
    fn from(e: nlrabi_core::CoreError) -> Self {
        use nlrabi_core::CoreError::*;
        match e {
            InvalidParams(_) | CouplingOutOfRange { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<nlrabi_oracle::OracleError> for CliError {
    fn from(e: nlrabi_oracle::OracleError) -> Self {
        use nlrabi_oracle::OracleError::*;
        match e {
            Invalid(_) | WrongBasis { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// Parses argv and runs the requested subcommand.
pub fn run<I, T>(argv: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = cli::Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            print!("{e}");
            CliError::Usage(String::new())
        }
        _ => CliError::Usage(e.to_string()),
    });
    let parsed = match parsed {
        Ok(p) => p,
        Err(CliError::Usage(m)) if m.is_empty() => return Ok(()), // help/version
        Err(e) => return Err(e),
    };

    let cfg = config::ConfigFile::load(parsed.config.as_deref())?;
    match &parsed.command {
        cli::Command::Isolated(args) => commands::run_isolated(args, &cfg),
        cli::Command::Spectrum(args) => commands::run_spectrum(args, &cfg),
        cli::Command::Gfun(args) => commands::run_gfun(args, &cfg),
        cli::Command::Coeffs(args) => commands::run_coeffs(args, &cfg),
        cli::Command::Diag(args) => commands::run_diag(args, &cfg),
    }
}
