//! Library half of the `probgeo` binary: argument grammar, CSV ingestion,
//! report emission and subcommand dispatch.

pub mod args;
pub mod commands;
pub mod error;
pub mod ingest;
pub mod output;

pub use args::{Cli, Command, Format};
pub use commands::run;
pub use error::CliError;
