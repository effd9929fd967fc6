//! The six MOEAs: NSGA-II, NSGA-II*, C-NSGA-II and SPEA2 (generational) and
//! ε-MOEA / cone ε-MOEA (steady state).

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dominance::{EpsilonVector, DEFAULT_KAPPA};
use crate::objective::Solution;
use crate::problems::Problem;
use crate::variation::{RngStream, VariationConfig};
use crate::{Error, Result};

mod clustering;
mod crowding;
mod generational;
mod sorting;
mod spea2;
mod steady_state;

pub use clustering::cluster_truncate_average_linkage;
pub use crowding::{crowding_distance, crowding_truncate, TruncationMode};
pub use generational::run_generational;
pub use sorting::{fast_nondominated_sort, pareto_front_indices};
pub use spea2::{spea2_fitness, spea2_truncate};
pub use steady_state::run_steady_state;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Nsga2,
    Nsga2Star,
    Cnsga2,
    Spea2,
    EpsMoea,
    ConeEpsMoea,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::Nsga2,
        AlgorithmId::EpsMoea,
        AlgorithmId::ConeEpsMoea,
        AlgorithmId::Cnsga2,
        AlgorithmId::Spea2,
        AlgorithmId::Nsga2Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Nsga2 => "NSGA2",
            AlgorithmId::Nsga2Star => "NSGA2STAR",
            AlgorithmId::Cnsga2 => "CNSGA2",
            AlgorithmId::Spea2 => "SPEA2",
            AlgorithmId::EpsMoea => "EPSMOEA",
            AlgorithmId::ConeEpsMoea => "CONEEPSMOEA",
        }
    }

    pub fn is_steady_state(self) -> bool {
        matches!(self, AlgorithmId::EpsMoea | AlgorithmId::ConeEpsMoea)
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: alloc::string::String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .map(|c| c.to_ascii_uppercase())
            .collect();
        match key.as_str() {
            "NSGA2" | "NSGAII" => Ok(AlgorithmId::Nsga2),
            "NSGA2STAR" | "NSGA2*" | "NSGAII*" => Ok(AlgorithmId::Nsga2Star),
            "CNSGA2" | "CNSGAII" => Ok(AlgorithmId::Cnsga2),
            "SPEA2" => Ok(AlgorithmId::Spea2),
            "EPSMOEA" | "εMOEA" => Ok(AlgorithmId::EpsMoea),
            "CONEEPSMOEA" | "CONEεMOEA" => Ok(AlgorithmId::ConeEpsMoea),
            _ => Err(Error::InvalidArgument(alloc::format!("unknown algorithm '{s}'"))),
        }
    }
}

/// Everything a single run needs besides the problem.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub algorithm: AlgorithmId,
    pub pop_size: usize,
    /// SPEA2 archive size; defaults to `pop_size`.
    pub archive_size: Option<usize>,
    /// Box sizes of the ε and cone ε archives.
    pub eps: Option<EpsilonVector>,
    pub kappa: f64,
    pub variation: VariationConfig,
    pub budget: usize,
    pub seed: u64,
    /// Verify archive invariants after every steady-state insertion.
    pub check_invariants: bool,
}

impl AlgorithmConfig {
    /// Population 100, κ = 0.5, no ε and invariant checks off.
    pub fn new(algorithm: AlgorithmId, variation: VariationConfig, budget: usize, seed: u64) -> Self {
        Self {
            algorithm,
            pop_size: 100,
            archive_size: None,
            eps: None,
            kappa: DEFAULT_KAPPA,
            variation,
            budget,
            seed,
            check_invariants: false,
        }
    }

    pub fn with_pop_size(mut self, n: usize) -> Self {
        self.pop_size = n;
        self
    }

    pub fn with_eps(mut self, eps: EpsilonVector) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_invariant_checks(mut self, on: bool) -> Self {
        self.check_invariants = on;
        self
    }

    pub fn spea2_archive_size(&self) -> usize {
        self.archive_size.unwrap_or(self.pop_size)
    }

    pub fn validate(&self, problem: &Problem) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::InvalidConfig("population size must be at least 2".into()));
        }
        if self.budget < self.pop_size {
            return Err(Error::InvalidConfig(alloc::format!(
                "budget {} is smaller than the population size {}",
                self.budget,
                self.pop_size
            )));
        }
        if self.archive_size == Some(0) {
            return Err(Error::InvalidConfig("archive size must be positive".into()));
        }
        self.variation.validate()?;
        if self.algorithm.is_steady_state() {
            let eps = self
                .eps
                .as_ref()
                .ok_or_else(|| Error::InvalidConfig(alloc::format!("{} needs an epsilon vector", self.algorithm)))?;
            if eps.len() != problem.m() {
                return Err(Error::DimensionMismatch {
                    expected: problem.m(),
                    found: eps.len(),
                });
            }
            if self.algorithm == AlgorithmId::ConeEpsMoea && !(0.0..1.0).contains(&self.kappa) {
                return Err(Error::KappaOutOfRange(self.kappa));
            }
        }
        Ok(())
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Mutually Pareto-nondominated solutions (on penalized objectives).
    pub final_front: Vec<Solution>,
    pub evaluations_used: usize,
    pub seed: u64,
    /// Filled in by callers that can read a clock.
    pub wall_time_ms: Option<f64>,
}

/// Runs `config` on `problem` with a fresh stream seeded from `config.seed`.
pub fn run(problem: &Problem, config: &AlgorithmConfig) -> Result<RunResult> {
    let mut rng = RngStream::new(config.seed);
    if config.algorithm.is_steady_state() {
        run_steady_state(problem, config, &mut rng)
    } else {
        run_generational(problem, config, &mut rng)
    }
}

/// Keeps the Pareto-nondominated members of `solutions`, preserving order.
pub(crate) fn nondominated_solutions(solutions: Vec<Solution>) -> Vec<Solution> {
    let keep = pareto_front_indices(&solutions);
    let mut flags = alloc::vec![false; solutions.len()];
    for i in keep {
        flags[i] = true;
    }
    solutions
        .into_iter()
        .zip(flags)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    #[allow(unused_imports)]
    use num_traits::Float;
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
