use std::path::PathBuf;

use bosonbudget_core::Error as CoreError;
use serde_json::json;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn parse(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Parse { path: path.into(), message: message.to_string() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Core(e) => match e {
                CoreError::Resource { .. } => "resource",
                CoreError::Overflow(_) => "overflow",
                CoreError::Numeric(_) => "numeric",
                CoreError::IncompleteDistribution(_) => "incomplete-distribution",
                CoreError::LawInvalid { .. } => "law-invalid",
                CoreError::Infeasible { .. } => "infeasible",
                CoreError::Dimension(_) => "dimension",
                CoreError::PhotonNumberMismatch { .. } => "photon-number-mismatch",
                CoreError::InvalidParameter(_) => "invalid-parameter",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Resource { .. } | CoreError::Overflow(_)) => EXIT_RESOURCE,
            CliError::Core(CoreError::Numeric(_) | CoreError::IncompleteDistribution(_) | CoreError::LawInvalid { .. }) => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        }
    }

    /// One-line JSON description for stderr.
    pub fn to_json_line(&self) -> String {
        let mut body = json!({
            "kind": self.kind(),
            "exitCode": self.exit_code(),
            "message": self.to_string(),
        });
        if let CliError::Core(CoreError::Resource { what, size, limit }) = self {
            body["what"] = json!(what);
            // u128 does not fit a JSON number in general.
            body["size"] = json!(size.to_string());
            body["limit"] = json!(limit.to_string());
        }
        json!({ "error": body }).to_string()
    }
}
