//! Error taxonomy shared by the library and the CLI.
//!
//! Exit-code mapping lives with the CLI: validation failures exit 2, budget
//! and size failures exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation failed:\n  {}", issues.join("\n  "))]
    Validation { issues: Vec<String> },

    #[error("{operation}: size {count} exceeds limit {limit}{}",
            hint.as_ref().map(|h| format!(" ({h})")).unwrap_or_default())]
    Budget {
        operation: String,
        count: u128,
        limit: u128,
        hint: Option<String>,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(issue: impl Into<String>) -> Self {
        Error::Validation { issues: vec![issue.into()] }
    }

    pub fn budget(
        operation: impl Into<String>,
        count: u128,
        limit: u128,
        hint: Option<&str>,
    ) -> Self {
        Error::Budget {
            operation: operation.into(),
            count,
            limit,
            hint: hint.map(|h| h.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
