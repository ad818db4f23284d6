//! Command-line front end for `aqaw-core`: single evaluations, seeded
//! verification suites and table emission. The binary `aqaw` is a thin
//! wrapper over [`eval::cmd_eval`], [`verify::cmd_verify`] and
//! [`table::cmd_table`].

pub mod config;
pub mod error;
pub mod eval;
pub mod output;
pub mod table;
pub mod verify;

pub use config::{OutputFormat, RunConfig};
pub use error::CliError;
