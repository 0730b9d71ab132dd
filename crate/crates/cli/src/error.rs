use std::path::PathBuf;

use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed document {}: {source}", .path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{}:{line}: {message}", .path.display())]
    Format { path: PathBuf, line: usize, message: String },

    #[error("expression error {0}")]
    Parse(#[from] ParseError),

    #[error("file declares GF({file}) but --field-override asks for GF({requested}); pass --force to reduce entries mod {requested}")]
    FieldOverride { file: u64, requested: u64 },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] qflow_core::Error),
}

impl CliError {
    /// 2 for anything wrong with the input itself, 1 for a well-formed
    /// input on which the requested computation fails.
    pub fn exit_code(&self) -> i32 {
        use qflow_core::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::NotPrime(_)
                | E::RaggedRows { .. }
                | E::DuplicateVertex(_)
                | E::DuplicateEdge(_)
                | E::UnknownVertex(_)
                | E::UnknownEdge(_)
                | E::Shape { .. }
                | E::DimensionMismatch { .. }
                | E::InvalidSubspace { .. } => 2,
                _ => 1,
            },
            _ => 2,
        }
    }
}
