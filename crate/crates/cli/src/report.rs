use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The `--json` document printed by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Parsed inputs in canonical printed form.
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub timing_ms: u128,
    pub version: String,
}

impl RunReport {
    pub fn new(
        command: &str,
        inputs: BTreeMap<String, String>,
        result: serde_json::Value,
        timing_ms: u128,
    ) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            result,
            timing_ms,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// What a subcommand produced: report fields, text output and whether the
/// mathematical answer was positive.
pub struct Outcome {
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub text: String,
    pub verdict: bool,
}

/// Input problems, reported with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Io { path: String, message: String },
    Core { path: Option<String>, error: leviscope::Error },
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Core {
                path: Some(path),
                error:
                    error @ (leviscope::Error::Syntax { .. }
                    | leviscope::Error::UndeclaredVariable { .. }
                    | leviscope::Error::NoConjugatePartner { .. }),
            } => write!(f, "{path}:{error}"),
            CliError::Core {
                path: Some(path),
                error,
            } => write!(f, "{path}: {error}"),
            CliError::Core { path: None, error } => write!(f, "{error}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<leviscope::Error> for CliError {
    fn from(error: leviscope::Error) -> Self {
        CliError::Core { path: None, error }
    }
}
