use lowdin_core::io::LoadError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable file, malformed JSON or schema violation.
    #[error("{message}")]
    Input { kind: &'static str, message: String },

    #[error(transparent)]
    Math(#[from] lowdin_core::Error),

    #[error("{failed} of {total} checks failed")]
    CheckFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn input(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Input {
            kind,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Input { .. } => 2,
            CliError::Math(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input { kind, .. } => kind,
            CliError::Math(e) => e.kind(),
            CliError::CheckFailed { .. } => "CheckFailed",
        }
    }

    /// One-line JSON description for standard error.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            error: &'a str,
            exit_code: i32,
            message: String,
        }
        serde_json::to_string(&Line {
            error: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
        })
        .expect("error line serializes")
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Schema(msg) => CliError::input("SchemaError", msg),
            LoadError::Domain(e) => CliError::Math(e),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input("ParseError", e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
