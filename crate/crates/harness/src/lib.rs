//! Batch runner for the quancorr experiments: configuration, noise
//! injection, experiment pipelines and CSV/JSON export.

pub mod config;
pub mod error;
pub mod experiments;
pub mod noise;
pub mod report;

pub use config::{Experiment, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use experiments::run;
pub use report::{write_outputs, RunReport};
