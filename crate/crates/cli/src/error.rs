use std::process::ExitCode;

use thiserror::Error;

use matchlab_core::bipartite::BipartiteError;
use matchlab_core::cover::CoverError;
use matchlab_core::folner::{CheckError, FolnerError};
use matchlab_core::groups::GroupError;
use matchlab_core::means::MeansError;
use matchlab_core::ramsey::RamseyError;

/// Outcome codes shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Pass, found or holds.
    Pass = 0,
    /// Fail, exhausted, not found, or an invalid witness.
    Fail = 1,
    /// Malformed input or a window escape.
    Invalid = 2,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(o as u8)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("window escape: {0}")]
    WindowEscape(String),
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

impl CliError {
    pub fn outcome(&self) -> Outcome {
        match self {
            CliError::WitnessInvalid(_) => Outcome::Fail,
            _ => Outcome::Invalid,
        }
    }

    /// Stable machine-readable tag for `--json` error output.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid_input",
            CliError::WindowEscape(_) => "window_escape",
            CliError::WitnessInvalid(_) => "witness_invalid",
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "json",
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        })*
    };
}

invalid_from!(GroupError, CoverError, BipartiteError, MeansError, RamseyError);

impl From<FolnerError> for CliError {
    fn from(e: FolnerError) -> Self {
        match e {
            FolnerError::WindowEscape(_) => CliError::WindowEscape(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::WindowEscape(_) => CliError::WindowEscape(e.to_string()),
            CheckError::WitnessInvalid { .. } => CliError::WitnessInvalid(e.to_string()),
            CheckError::Malformed(inner) => inner.into(),
        }
    }
}
