//! Exit-code-bearing wrapper around library and file-layer failures.
//!
//! Codes: 0 success, 2 parameter validation, 3 data (unreadable, malformed,
//! or out-of-domain input), 4 numeric degeneration. Argument parsing itself
//! exits 2 through clap, consistent with the validation class.

use fluctus_core::ErrorCategory;
use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// A library call failed; `stage` names the pipeline step.
    Stage {
        stage: &'static str,
        source: fluctus_core::Error,
    },
    /// A file line could not be interpreted.
    Parse {
        path: PathBuf,
        line: usize,
        detail: String,
    },
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Render(serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Stage { source, .. } => match source.category() {
                ErrorCategory::Validation => 2,
                ErrorCategory::Data => 3,
                ErrorCategory::Numeric => 4,
            },
            CliError::Parse { .. } | CliError::Io { .. } => 3,
            CliError::Render(_) => 4,
        }
    }

    pub fn invalid(stage: &'static str, detail: impl Into<String>) -> Self {
        CliError::Stage {
            stage,
            source: fluctus_core::Error::InvalidParameter(detail.into()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Stage { stage, source } => write!(f, "{stage}: {source}"),
            CliError::Parse { path, line, detail } => {
                write!(f, "{}:{line}: {detail}", path.display())
            }
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Render(err) => write!(f, "report serialization: {err}"),
        }
    }
}

impl std::error::Error for CliError {}

/// `map_err` adapter naming the failing stage.
pub fn at(stage: &'static str) -> impl Fn(fluctus_core::Error) -> CliError {
    move |source| CliError::Stage { stage, source }
}
