//! Scenario files, reports and the `macroscope` command line.

use std::path::PathBuf;

pub mod commands;
pub mod fixtures;
pub mod report;
pub mod scenario;

/// Environment variable overriding the enumeration ceiling.
pub const CEILING_VAR: &str = "MACROSCOPE_CEILING";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("writing report: {0}")]
    Report(String),
    #[error(transparent)]
    Core(#[from] macroscope_core::Error),
}

impl CliError {
    pub(crate) fn config(scenario: &str, field: &str, msg: impl std::fmt::Display) -> Self {
        Self::Config(format!("scenario `{scenario}`: field `{field}`: {msg}"))
    }
}

/// Process exit status for a finished command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Incorrect = 1,
    ConfigError = 2,
}

/// The ceiling from `MACROSCOPE_CEILING`, or the default.
pub fn ceiling_from_env() -> Result<u64, CliError> {
    match std::env::var(CEILING_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Config(format!(
                "{CEILING_VAR} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(macroscope_core::DEFAULT_CEILING),
        Err(e) => Err(CliError::Config(format!("{CEILING_VAR}: {e}"))),
    }
}
