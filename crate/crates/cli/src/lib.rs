//! Experiment runner for the relaxation schemes in `relaxkit-core`.
//!
//! A run expands a preset plus an optional `key = value` configuration into
//! independent `(ε, n_cells)` solves, writes solution snapshots and per-step
//! audit logs as CSV, and assembles refinement studies and trend series.

pub mod config;
pub mod error;
pub mod presets;
pub mod runner;
pub mod table;

pub use config::{parse_config, ExperimentConfig, Preset, A0};
pub use error::CliError;
pub use runner::{run_preset, RunOptions, RunRecord, RunSummary, TrendRecord};
pub use table::{emit_csv, Cell, Table};
