//! Experiment configuration, sampling, batch execution and reports.

pub mod config;
pub mod report;
pub mod run;
pub mod sampling;

pub use config::{tolerances, Command, ExperimentConfig, Format};
pub use report::{emit_report, write_report, CSV_HEADER};
pub use run::{run_experiment, ReportRow, RunOutput, Summary};
pub use sampling::{sample_pair, sample_point, sample_set};
