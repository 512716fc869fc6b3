//! Experiment runner for near-field compressed channel estimation.
//!
//! Builds on `nearfield-core` with config loading, parallel Monte Carlo
//! pipelines, result tables and dictionary export.

pub mod config;
pub mod error;
pub mod experiments;
pub mod export;
pub mod fast;
pub mod table;

pub use config::{ExperimentConfig, ExperimentKind, Preset};
pub use error::{Result, SimError};
pub use experiments::{run, run_samples, Samples};
pub use table::{ResultRow, Table};
