//! Experiment runner for panel selection: builds metrics from tabular data,
//! samples panels with each selector, audits them and writes CSV reports.

pub mod config;
pub mod experiment;
pub mod synthetic;

pub use config::{ExperimentConfig, SyntheticSpec};
pub use experiment::{derive_seed, load_population, run_experiment, run_seed, summarize, write_rows, Aggregate, Row, RunReport, ROW_COLUMNS};
pub use synthetic::{adult_like, adult_like_schema, subsample, write_table_csv};
