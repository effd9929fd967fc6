use alloc::vec::Vec;

use super::generational::initial_population;
use super::{nondominated_solutions, AlgorithmConfig, AlgorithmId, RunResult};
use crate::archive::{Acceptance, BoundedArchive};
use crate::dominance::{build_cone_matrix, dominates};
use crate::objective::{ObjectiveSense, Solution};
use crate::problems::Problem;
use crate::variation::{polynomial_mutation, sbx_crossover, tournament_index, RngStream};
use crate::{Error, Result};

/// Steady-state ε-MOEA / cone ε-MOEA.
///
/// The whole random initial population is offered to the archive. Each step
/// then mates a Pareto-tournament winner from the population with a uniform
/// archive member, keeps one SBX child at random, mutates and evaluates it,
/// and offers it to both populations. Returns the final archive.
pub fn run_steady_state(problem: &Problem, config: &AlgorithmConfig, rng: &mut RngStream) -> Result<RunResult> {
    config.validate(problem)?;
    let eps = config.eps.clone().expect("validated");
    let acceptance = match config.algorithm {
        AlgorithmId::EpsMoea => Acceptance::Epsilon(eps),
        AlgorithmId::ConeEpsMoea => Acceptance::ConeEpsilon(build_cone_matrix(eps, config.kappa)?),
        other => {
            return Err(Error::InvalidConfig(alloc::format!(
                "{other} is not a steady-state algorithm"
            )))
        }
    };
    let mut archive = BoundedArchive::new(acceptance, ObjectiveSense::minimize(problem.m()))?;
    let mut evals = 0;
    let mut pop = initial_population(problem, config.pop_size, rng, &mut evals);
    for s in &pop {
        offer(&mut archive, s.clone(), config.check_invariants)?;
    }

    let bounds = problem.bounds();
    while evals < config.budget {
        let a = tournament_index(&pop, rng)?;
        let partner = if archive.is_empty() {
            &pop[tournament_index(&pop, rng)?]
        } else {
            archive.get(rng.index(archive.len())).expect("index in range")
        };
        let (c1, c2) = sbx_crossover(&pop[a].x, &partner.x, &config.variation, bounds, rng)?;
        let child = if rng.chance(0.5) { c1 } else { c2 };
        let x = polynomial_mutation(&child, &config.variation, bounds, rng)?;
        let child = problem.evaluate_unchecked(x);
        evals += 1;
        update_population(&mut pop, child.clone(), rng);
        offer(&mut archive, child, config.check_invariants)?;
    }

    Ok(RunResult {
        final_front: nondominated_solutions(archive.into_solutions()),
        evaluations_used: evals,
        seed: rng.seed(),
        wall_time_ms: None,
    })
}

fn offer(archive: &mut BoundedArchive, s: Solution, check: bool) -> Result<()> {
    archive.insert(s)?;
    if check {
        archive
            .check_invariants()
            .map_err(|v| Error::ArchiveInvariant(alloc::format!("{v:?}")))?;
    }
    Ok(())
}

/// The child replaces a random member it dominates; failing that it is
/// dropped if any member dominates it, and otherwise replaces a random member.
fn update_population(pop: &mut [Solution], child: Solution, rng: &mut RngStream) {
    let fc = child.fitness();
    let dominated: Vec<usize> = (0..pop.len())
        .filter(|&i| dominates(fc, pop[i].fitness()))
        .collect();
    let slot = if !dominated.is_empty() {
        dominated[rng.index(dominated.len())]
    } else if pop.iter().any(|p| dominates(p.fitness(), fc)) {
        return;
    } else {
        rng.index(pop.len())
    };
    pop[slot] = child;
}
