//! Library side of the `chromavar` command-line tool: input loading, the
//! verification battery and report rendering.

pub mod commands;
pub mod config;
pub mod inputs;
pub mod report;
pub mod verify;

pub use config::{Format, RunConfig};
pub use inputs::Battery;
pub use report::{Check, Verdict, VerificationReport};
pub use verify::verify_battery;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] chromavar_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: chromavar_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
