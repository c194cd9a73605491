//! Experiment runner for the camcover simulator: configuration parsing,
//! multi-seed comparisons and machine-readable outputs.

pub mod config;
pub mod error;
pub mod experiment;
pub mod format;

pub use config::{parse_config, parse_override, ExperimentSpec, Formats};
pub use error::{CliError, Result};
pub use experiment::{run_all, run_experiment, timeline_file_name, write_artifacts, ExperimentReport};
