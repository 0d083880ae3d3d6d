//! Orchestration, file formats and the command-line front end for
//! `siegert-core`.

pub mod commands;
pub mod config;
mod error;
pub mod num;
pub mod pipeline;
pub mod report;

pub use commands::Command;
pub use config::RunConfig;
pub use error::CliError;
