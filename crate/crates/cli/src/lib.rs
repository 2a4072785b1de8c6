//! Experiment harness around the `subgrad` library: config loading,
//! presets, repetition scheduling, and CSV/SVG emission.

use std::fmt;

pub mod config;
pub mod csv;
pub mod plot;
pub mod presets;
pub mod runner;

/// Harness-level failures, split by exit code: configuration and usage
/// problems exit 2, I/O problems exit 3. A failed bound-compliance check is
/// not an error; it is a reported outcome that makes the process exit 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError::Io(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<subgrad::Error> for CliError {
    fn from(e: subgrad::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
