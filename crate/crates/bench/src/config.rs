//! TOML experiment description.
//!
//! ```toml
//! runs = 10
//! base_seed = 1
//! output = "out"
//! epsilon = "estimated"        # or "calculated"
//! record_wall_time = false
//!
//! [metrics]
//! gamma = true
//! delta = true
//! hv = true
//! cs = true
//!
//! [reference_fronts]
//! POL = "fronts/pol.txt"       # relative to the config file
//!
//! [[cell]]
//! problem = "ZDT1"
//! algorithm = "CONEEPSMOEA"
//! evaluations = 20000          # every key below is optional
//! pop_size = 100
//! kappa = 0.5
//! epsilon = [0.0198]           # one value or one per objective
//! ```
//!
//! Other per-cell keys: `objectives` (DTLZ2 only), `archive_size`,
//! `epsilon_choice`, `eta_xover`, `eta_mut`, `p_xover`, `p_mut`,
//! `check_invariants`. Unknown keys are errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use coneps_core::algorithms::{AlgorithmConfig, AlgorithmId};
use coneps_core::dominance::EpsilonVector;
use coneps_core::problems::Problem;
use serde::{Deserialize, Serialize};

use crate::defaults::{default_config, EpsilonChoice};
use crate::{parse_problem, BenchError};

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricToggles {
    #[serde(default = "yes")]
    pub gamma: bool,
    #[serde(default = "yes")]
    pub delta: bool,
    #[serde(default = "yes")]
    pub hv: bool,
    #[serde(default = "yes")]
    pub cs: bool,
}

impl Default for MetricToggles {
    fn default() -> Self {
        Self {
            gamma: true,
            delta: true,
            hv: true,
            cs: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellConfig {
    pub problem: String,
    pub algorithm: String,
    pub objectives: Option<usize>,
    pub evaluations: Option<usize>,
    pub pop_size: Option<usize>,
    pub archive_size: Option<usize>,
    pub epsilon: Option<Vec<f64>>,
    pub epsilon_choice: Option<EpsilonChoice>,
    pub kappa: Option<f64>,
    pub eta_xover: Option<f64>,
    pub eta_mut: Option<f64>,
    pub p_xover: Option<f64>,
    pub p_mut: Option<f64>,
    pub check_invariants: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "one")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub epsilon: EpsilonChoice,
    #[serde(default)]
    pub record_wall_time: bool,
    #[serde(default)]
    pub metrics: MetricToggles,
    /// Reference-front files keyed by problem label.
    #[serde(default)]
    pub reference_fronts: BTreeMap<String, PathBuf>,
    #[serde(rename = "cell", default)]
    pub cells: Vec<CellConfig>,
    /// Directory relative reference-front paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// A cell with every default filled in. `config.seed` is set per run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedCell {
    pub problem: Problem,
    pub config: AlgorithmConfig,
}

impl ResolvedCell {
    pub fn label(&self) -> String {
        self.problem.label()
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))
    }

    /// Reads `path`; relative reference-front paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        let mut cfg = Self::from_toml(&text).map_err(|e| match e {
            BenchError::Config(msg) => BenchError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment configs serialize")
    }

    /// Path of the reference-front override for `label`, if any.
    pub fn reference_path(&self, label: &str) -> Option<PathBuf> {
        self.reference_fronts
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(label))
            .map(|(_, p)| self.base_dir.join(p))
    }

    /// Resolves and validates every cell.
    pub fn resolve(&self) -> Result<Vec<ResolvedCell>, BenchError> {
        if self.runs == 0 {
            return Err(BenchError::Config("runs must be at least 1".into()));
        }
        if self.cells.is_empty() {
            return Err(BenchError::Config("no [[cell]] entries".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.cells.len());
        for (i, cell) in self.cells.iter().enumerate() {
            let resolved = self
                .resolve_cell(cell)
                .map_err(|e| BenchError::Config(format!("cell {} ({} / {}): {e}", i + 1, cell.problem, cell.algorithm)))?;
            if !seen.insert((resolved.label(), resolved.config.algorithm)) {
                return Err(BenchError::Config(format!(
                    "cell {}: {} / {} appears twice",
                    i + 1,
                    resolved.label(),
                    resolved.config.algorithm
                )));
            }
            out.push(resolved);
        }
        Ok(out)
    }

    fn resolve_cell(&self, cell: &CellConfig) -> Result<ResolvedCell, BenchError> {
        let problem = match cell.objectives {
            Some(m) => Problem::with_objectives(cell.problem.trim().parse()?, m)?,
            None => parse_problem(&cell.problem)?,
        };
        let algorithm: AlgorithmId = cell.algorithm.parse()?;
        let choice = cell.epsilon_choice.unwrap_or(self.epsilon);
        let mut config = default_config(&problem, algorithm, choice, 0)?;
        if let Some(v) = cell.evaluations {
            config.budget = v;
        }
        if let Some(v) = cell.pop_size {
            config.pop_size = v;
        }
        if cell.archive_size.is_some() {
            config.archive_size = cell.archive_size;
        }
        if let Some(v) = cell.kappa {
            config.kappa = v;
        }
        if let Some(v) = cell.eta_xover {
            config.variation.eta_xover = v;
        }
        if let Some(v) = cell.eta_mut {
            config.variation.eta_mut = v;
        }
        if let Some(v) = cell.p_xover {
            config.variation.p_xover = v;
        }
        if let Some(v) = cell.p_mut {
            config.variation.p_mut = v;
        }
        if let Some(v) = cell.check_invariants {
            config.check_invariants = v;
        }
        if let Some(eps) = &cell.epsilon {
            config.eps = Some(expand_epsilon(eps, problem.m())?);
        } else if algorithm.is_steady_state() && config.eps.is_none() {
            return Err(BenchError::Config(format!(
                "no tabulated epsilon for {} objectives; set `epsilon`",
                problem.m()
            )));
        }
        config.validate(&problem)?;
        Ok(ResolvedCell { problem, config })
    }
}

/// One value is broadcast to `m` objectives; otherwise the length must be `m`.
pub fn expand_epsilon(values: &[f64], m: usize) -> Result<EpsilonVector, BenchError> {
    let v = match values.len() {
        1 => vec![values[0]; m],
        n if n == m => values.to_vec(),
        n => {
            return Err(BenchError::Config(format!(
                "epsilon has {n} values, expected 1 or {m}"
            )))
        }
    };
    Ok(EpsilonVector::new(v)?)
}
