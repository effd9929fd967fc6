//! Experiment harness for `coneps-core`.
//!
//! * [`defaults`]: per-problem operator indices and tabulated ε values.
//! * [`config`]: the TOML experiment description.
//! * [`fronts`]: front files and reference-front loading.
//! * [`records`]: run records and the results CSV.
//! * [`runner`]: the parallel campaign runner and metric scoring.
//! * [`stats`]: block-effect removal, rank tables and summaries.

use std::path::PathBuf;

pub mod config;
pub mod defaults;
pub mod fronts;
pub mod records;
pub mod runner;
pub mod stats;

pub use config::{CellConfig, ExperimentConfig, MetricToggles, ResolvedCell};
pub use defaults::{default_config, default_epsilon, distribution_indices, EpsilonChoice};
pub use records::{Metric, RunRecord};
pub use runner::{run_experiment, run_single, Failure, Outcome, RunOptions};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] coneps_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Parses a problem label such as `ZDT1` or `DTLZ2_5` (DTLZ2 with five
/// objectives).
pub fn parse_problem(label: &str) -> Result<coneps_core::problems::Problem, BenchError> {
    use coneps_core::problems::{Problem, ProblemId};
    let label = label.trim();
    if let Some((base, m)) = label.split_once('_') {
        let id: ProblemId = base.parse()?;
        let m: usize = m
            .parse()
            .map_err(|_| BenchError::Config(format!("bad objective count in '{label}'")))?;
        return Ok(Problem::with_objectives(id, m)?);
    }
    Ok(Problem::new(label.parse()?))
}
