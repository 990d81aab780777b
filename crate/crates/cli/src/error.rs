use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: u64, message: String },
    #[error("{}: no data rows", .0.display())]
    EmptyInput(PathBuf),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] probgeo_core::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything detected after parsing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
