//! Default operator indices and ε values for every benchmark problem.

use std::fmt;
use std::str::FromStr;

use coneps_core::algorithms::{AlgorithmConfig, AlgorithmId};
use coneps_core::dominance::{EpsilonVector, DEFAULT_KAPPA};
use coneps_core::problems::{Problem, ProblemId};
use coneps_core::variation::VariationConfig;
use serde::{Deserialize, Serialize};

use crate::BenchError;

/// SBX and polynomial-mutation distribution indices `(η_x, η_m)`.
pub fn distribution_indices(id: ProblemId) -> (f64, f64) {
    match id {
        ProblemId::Zdt4 | ProblemId::Dtlz1 | ProblemId::Dtlz3 => (2.0, 20.0),
        ProblemId::Zdt2
        | ProblemId::Dtlz5
        | ProblemId::Dtlz6
        | ProblemId::Dtlz7
        | ProblemId::Dtlz8
        | ProblemId::Dtlz9 => (2.0, 5.0),
        _ => (15.0, 20.0),
    }
}

/// Which of the two tabulated ε rows to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsilonChoice {
    /// Values from the sizing formulas.
    Calculated,
    /// Values tuned to land near 100 archive members.
    #[default]
    Estimated,
}

impl fmt::Display for EpsilonChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsilonChoice::Calculated => "calculated",
            EpsilonChoice::Estimated => "estimated",
        })
    }
}

impl FromStr for EpsilonChoice {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "calculated" => Ok(EpsilonChoice::Calculated),
            "estimated" => Ok(EpsilonChoice::Estimated),
            _ => Err(BenchError::Config(format!("unknown epsilon choice '{s}'"))),
        }
    }
}

/// Tabulated ε for one problem and archive type: `(calculated, estimated)`.
/// A single value applies to every objective.
fn eps_row(id: ProblemId, cone: bool) -> (&'static [f64], &'static [f64]) {
    use ProblemId::*;
    if cone {
        match id {
            Deb52 => (&[0.0164, 0.0198], &[0.0164, 0.0198]),
            Pol => (&[0.3168, 0.4950], &[0.20, 0.33]),
            Zdt1 | Zdt2 | Zdt4 => (&[0.0198], &[0.0198]),
            Zdt3 => (&[0.0168, 0.0356], &[0.012, 0.025]),
            Zdt6 => (&[0.0143, 0.0184], &[0.0143, 0.0184]),
            Dtlz1 => (&[0.0798], &[0.05, 0.05, 0.0833]),
            Dtlz2 | Dtlz3 | Dtlz4 => (&[0.1595], &[0.1595]),
            Dtlz5 => (&[0.014, 0.014, 0.02], &[0.025]),
            Dtlz6 => (&[0.014, 0.014, 0.02], &[0.017]),
            Dtlz7 => (&[0.1372, 0.1372, 0.5404], &[0.12, 0.12, 0.30]),
            Dtlz8 => (&[0.12, 0.12, 0.16], &[0.03]),
            Dtlz9 => (&[0.0198], &[0.27, 0.27, 0.25]),
        }
    } else {
        match id {
            Deb52 => (&[0.0083, 0.010], &[0.003, 0.003]),
            Pol => (&[0.16, 0.25], &[0.038, 0.038]),
            Zdt1 => (&[0.010], &[0.0075]),
            Zdt2 => (&[0.010], &[0.0076]),
            Zdt3 => (&[0.0085, 0.018], &[0.0026]),
            Zdt4 => (&[0.010], &[0.0065]),
            Zdt6 => (&[0.0072, 0.0093], &[0.0067]),
            Dtlz1 => (&[0.05], &[0.02, 0.02, 0.05]),
            Dtlz2 | Dtlz3 => (&[0.10], &[0.06, 0.06, 0.066]),
            Dtlz4 => (&[0.10], &[0.062]),
            Dtlz5 | Dtlz6 => (&[0.007, 0.007, 0.01], &[0.005]),
            Dtlz7 => (&[0.086, 0.086, 0.3386], &[0.05]),
            Dtlz8 => (&[0.075, 0.075, 0.10], &[0.02, 0.02, 0.04]),
            Dtlz9 => (&[0.010], &[0.025]),
        }
    }
}

/// Default ε vector for a steady-state algorithm, or `None` for the
/// generational ones.
///
/// Tabulated rows are for the standard objective count. A uniform row is
/// broadcast to any `m`; a per-objective row only fits its own length.
pub fn default_epsilon(problem: &Problem, algorithm: AlgorithmId, choice: EpsilonChoice) -> Option<EpsilonVector> {
    if !algorithm.is_steady_state() {
        return None;
    }
    let (calc, est) = eps_row(problem.id(), algorithm == AlgorithmId::ConeEpsMoea);
    let row = match choice {
        EpsilonChoice::Calculated => calc,
        EpsilonChoice::Estimated => est,
    };
    let m = problem.m();
    let values = match row.len() {
        1 => vec![row[0]; m],
        len if len == m => row.to_vec(),
        _ => return None,
    };
    EpsilonVector::new(values).ok()
}

/// Full configuration for `algorithm` on `problem`: tabulated operator
/// indices, `p_c = 1`, `p_m = 1/n`, population 100, κ = 0.5, the problem's
/// evaluation budget and the tabulated ε.
pub fn default_config(
    problem: &Problem,
    algorithm: AlgorithmId,
    choice: EpsilonChoice,
    seed: u64,
) -> Result<AlgorithmConfig, BenchError> {
    let (eta_x, eta_m) = distribution_indices(problem.id());
    let variation = VariationConfig::with_indices(eta_x, eta_m, problem.n())?;
    let mut cfg =
        AlgorithmConfig::new(algorithm, variation, problem.default_budget(), seed).with_kappa(DEFAULT_KAPPA);
    cfg.eps = default_epsilon(problem, algorithm, choice);
    Ok(cfg)
}
