use std::path::PathBuf;

use thiserror::Error;

/// Process exit code for a strict-run invariant violation.
pub const EXIT_INVARIANT: u8 = 2;
/// Process exit code for an invalid configuration.
pub const EXIT_CONFIG: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("config: {0}")]
    ConfigValue(String),

    #[error("run {run}: {source}")]
    Invariant {
        run: String,
        source: relaxkit_core::Error,
    },

    #[error("run {run}: {source}")]
    Solver {
        run: String,
        source: relaxkit_core::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn config(line: usize, message: impl Into<String>) -> Self {
        CliError::Config {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: impl Into<std::io::Error>) -> Self {
        CliError::Io {
            path: path.into(),
            source: source.into(),
        }
    }

    /// Wraps a solver error, routing invariant failures to their own variant.
    pub(crate) fn from_run(run: &str, source: relaxkit_core::Error) -> Self {
        let run = run.to_string();
        match source {
            relaxkit_core::Error::Invariant { .. } => CliError::Invariant { run, source },
            _ => CliError::Solver { run, source },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::ConfigValue(_) => EXIT_CONFIG,
            CliError::Invariant { .. } => EXIT_INVARIANT,
            CliError::Solver { .. } | CliError::Io { .. } => 1,
        }
    }
}
