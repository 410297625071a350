//! Batch driver for the `rieszlab` checks: TOML configuration, suite
//! orchestration, deterministic JSON/CSV reports and CI exit codes.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

pub use config::{parse_config, Format, RunConfig, Suite};
pub use commands::{run_cli, OUTPUT_DIR_ENV};
pub use error::{CliError, ConfigError};
pub use report::{emit, SuiteReport};
pub use suites::run_suites;
