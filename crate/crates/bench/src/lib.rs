//! Experiment harness for the `axgd-core` solvers: configuration, the
//! parallel cell runner, CSV/JSON output and the figure presets.

// Validation uses `!(x > 0.0)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod presets;
pub mod summary;

pub use config::{parse_config, ExperimentConfig, MethodKind};
pub use error::{BenchError, Result};
pub use experiment::{run_experiment, CellResult, RunRecord};
