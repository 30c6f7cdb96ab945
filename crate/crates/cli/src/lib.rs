//! Configuration, command dispatch and result documents for the `gwmirror`
//! binary.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{cmd_compute, cmd_run, cmd_solve, cmd_verify};
pub use config::{parse_config, Mode, RunConfig};
pub use report::{ResultDocument, Status};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{}: {0}", .0.name())]
    Math(#[from] gwmirror_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for usage and configuration problems, 2 for a failed mathematical
    /// condition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(e) if e.is_math_failure() => 2,
            _ => 1,
        }
    }
}
