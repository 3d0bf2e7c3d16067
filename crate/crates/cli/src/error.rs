use std::io;
use std::path::PathBuf;

use certain_trust::fuzzy::ValidationIssue;
use certain_trust::store::StoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] certain_trust::Error),

    #[error(transparent)]
    Store(#[from] StoreError),

    #[error("{} invalid:\n{}", path.display(), render_issues(issues))]
    InvalidRules {
        path: PathBuf,
        issues: Vec<ValidationIssue>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for domain failures, 2 for usage mistakes, 3 for storage.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::InvalidRules { .. } => 1,
            CliError::Store(StoreError::UnknownVariable(_) | StoreError::InvalidRecord(_)) => 1,
            CliError::Usage(_) => 2,
            CliError::Store(StoreError::Io { .. }) | CliError::Io { .. } => 3,
        }
    }
}

fn render_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}
