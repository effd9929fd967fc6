use alloc::vec::Vec;
use core::cmp::Ordering;

use super::clustering::cluster_truncate_average_linkage;
use super::crowding::{crowding_distance, crowding_truncate, TruncationMode};
use super::sorting::{fast_nondominated_sort, ranks_from_fronts};
use super::spea2::{spea2_fitness, spea2_truncate};
use super::{nondominated_solutions, AlgorithmConfig, AlgorithmId, RunResult};
use crate::objective::Solution;
use crate::problems::Problem;
use crate::variation::{polynomial_mutation, random_decision_vector, sbx_crossover, RngStream};
use crate::{Error, Result};

/// Generational loop shared by NSGA-II, NSGA-II*, C-NSGA-II and SPEA2.
///
/// Each generation creates `N` offspring (fewer in a final partial generation
/// so the budget is met exactly) and reduces parents plus offspring back to
/// `N`. NSGA-II variants return the first front of the final population,
/// SPEA2 the nondominated part of its final archive.
pub fn run_generational(problem: &Problem, config: &AlgorithmConfig, rng: &mut RngStream) -> Result<RunResult> {
    config.validate(problem)?;
    if config.algorithm.is_steady_state() {
        return Err(Error::InvalidConfig(alloc::format!(
            "{} is not a generational algorithm",
            config.algorithm
        )));
    }
    let mut evals = 0;
    let pop = initial_population(problem, config.pop_size, rng, &mut evals);
    let final_front = match config.algorithm {
        AlgorithmId::Spea2 => spea2_loop(problem, config, rng, pop, &mut evals)?,
        _ => nsga_loop(problem, config, rng, pop, &mut evals)?,
    };
    Ok(RunResult {
        final_front,
        evaluations_used: evals,
        seed: rng.seed(),
        wall_time_ms: None,
    })
}

pub(crate) fn initial_population(
    problem: &Problem,
    n: usize,
    rng: &mut RngStream,
    evals: &mut usize,
) -> Vec<Solution> {
    *evals += n;
    (0..n)
        .map(|_| problem.evaluate_unchecked(random_decision_vector(problem.bounds(), rng)))
        .collect()
}

/// `count` offspring from parents drawn by `select`.
fn offspring(
    problem: &Problem,
    config: &AlgorithmConfig,
    parents: &[Solution],
    count: usize,
    rng: &mut RngStream,
    mut select: impl FnMut(&mut RngStream) -> usize,
) -> Result<Vec<Solution>> {
    let bounds = problem.bounds();
    let mut children = Vec::with_capacity(count);
    while children.len() < count {
        let a = select(rng);
        let b = select(rng);
        let (c1, c2) = sbx_crossover(&parents[a].x, &parents[b].x, &config.variation, bounds, rng)?;
        for c in [c1, c2] {
            if children.len() == count {
                break;
            }
            let x = polynomial_mutation(&c, &config.variation, bounds, rng)?;
            children.push(problem.evaluate_unchecked(x));
        }
    }
    Ok(children)
}

fn distinct_pair(n: usize, rng: &mut RngStream) -> (usize, usize) {
    let i = rng.index(n);
    let mut j = rng.index(n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Binary tournament on a key where `Ordering::Less` wins; equal keys are
/// settled by a fair coin.
fn tournament(n: usize, rng: &mut RngStream, cmp: impl Fn(usize, usize) -> Ordering) -> usize {
    let (i, j) = distinct_pair(n, rng);
    match cmp(i, j) {
        Ordering::Less => i,
        Ordering::Greater => j,
        Ordering::Equal => {
            if rng.chance(0.5) {
                i
            } else {
                j
            }
        }
    }
}

struct Ranking {
    rank: Vec<usize>,
    crowding: Vec<f64>,
    first_front: Vec<usize>,
}

fn rank_population(pop: &[Solution]) -> Ranking {
    let fronts = fast_nondominated_sort(pop);
    let rank = ranks_from_fronts(&fronts, pop.len());
    let mut crowding = alloc::vec![0.0; pop.len()];
    for front in &fronts {
        let members: Vec<&[f64]> = front.iter().map(|&i| pop[i].fitness()).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&members)) {
            crowding[i] = d;
        }
    }
    Ranking {
        rank,
        crowding,
        first_front: fronts.into_iter().next().unwrap_or_default(),
    }
}

fn nsga_loop(
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RngStream,
    mut pop: Vec<Solution>,
    evals: &mut usize,
) -> Result<Vec<Solution>> {
    let n = config.pop_size;
    let mut ranking = rank_population(&pop);
    while *evals < config.budget {
        let count = n.min(config.budget - *evals);
        let children = {
            let r = &ranking;
            let use_crowding = config.algorithm != AlgorithmId::Cnsga2;
            offspring(problem, config, &pop, count, rng, |rng| {
                tournament(n, rng, |a, b| {
                    r.rank[a].cmp(&r.rank[b]).then_with(|| {
                        if use_crowding {
                            r.crowding[b].total_cmp(&r.crowding[a])
                        } else {
                            Ordering::Equal
                        }
                    })
                })
            })?
        };
        *evals += count;
        pop.extend(children);
        pop = environmental_selection(pop, n, config.algorithm)?;
        ranking = rank_population(&pop);
    }
    let mut final_front: Vec<Solution> = Vec::with_capacity(ranking.first_front.len());
    let mut pop: Vec<Option<Solution>> = pop.into_iter().map(Some).collect();
    for i in ranking.first_front {
        final_front.push(pop[i].take().expect("front indices are distinct"));
    }
    Ok(final_front)
}

/// Reduces `merged` to `n` members front by front, truncating the last
/// partially fitting front according to the algorithm.
fn environmental_selection(merged: Vec<Solution>, n: usize, algorithm: AlgorithmId) -> Result<Vec<Solution>> {
    let fronts = fast_nondominated_sort(&merged);
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    for front in fronts {
        let room = n - chosen.len();
        if room == 0 {
            break;
        }
        if front.len() <= room {
            chosen.extend(front);
            continue;
        }
        let members: Vec<&[f64]> = front.iter().map(|&i| merged[i].fitness()).collect();
        let kept = match algorithm {
            AlgorithmId::Nsga2 => crowding_truncate(&members, room, TruncationMode::Once)?,
            AlgorithmId::Nsga2Star => crowding_truncate(&members, room, TruncationMode::Iterative)?,
            AlgorithmId::Cnsga2 => cluster_truncate_average_linkage(&members, room)?,
            other => {
                return Err(Error::InvalidConfig(alloc::format!(
                    "{other} has no crowding-based selection"
                )))
            }
        };
        chosen.extend(kept.into_iter().map(|k| front[k]));
        break;
    }
    Ok(take_indices(merged, &chosen))
}

fn take_indices(pool: Vec<Solution>, indices: &[usize]) -> Vec<Solution> {
    let mut pool: Vec<Option<Solution>> = pool.into_iter().map(Some).collect();
    indices
        .iter()
        .map(|&i| pool[i].take().expect("indices are distinct"))
        .collect()
}

fn spea2_loop(
    problem: &Problem,
    config: &AlgorithmConfig,
    rng: &mut RngStream,
    mut pop: Vec<Solution>,
    evals: &mut usize,
) -> Result<Vec<Solution>> {
    let n = config.pop_size;
    let size = config.spea2_archive_size();
    let mut archive: Vec<Solution> = Vec::new();
    loop {
        let mut union = core::mem::take(&mut pop);
        union.append(&mut archive);
        let fitness = spea2_fitness(&union);
        let chosen = spea2_select(&union, &fitness, size)?;
        let archive_fitness: Vec<f64> = chosen.iter().map(|&i| fitness[i]).collect();
        archive = take_indices(union, &chosen);
        if *evals >= config.budget {
            break;
        }
        let count = n.min(config.budget - *evals);
        let len = archive.len();
        pop = if len < 2 {
            offspring(problem, config, &archive, count, rng, |_| 0)?
        } else {
            offspring(problem, config, &archive, count, rng, |rng| {
                tournament(len, rng, |a, b| archive_fitness[a].total_cmp(&archive_fitness[b]))
            })?
        };
        *evals += count;
    }
    Ok(nondominated_solutions(archive))
}

/// SPEA2 environmental selection: all members with fitness < 1, topped up
/// with the best dominated members or truncated down to `size`.
fn spea2_select(union: &[Solution], fitness: &[f64], size: usize) -> Result<Vec<usize>> {
    let nondominated: Vec<usize> = (0..union.len()).filter(|&i| fitness[i] < 1.0).collect();
    match nondominated.len().cmp(&size) {
        Ordering::Equal => Ok(nondominated),
        Ordering::Less => {
            let mut order: Vec<usize> = (0..union.len()).collect();
            order.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
            order.truncate(size.min(union.len()));
            order.sort_unstable();
            Ok(order)
        }
        Ordering::Greater => {
            let members: Vec<&[f64]> = nondominated.iter().map(|&i| union[i].fitness()).collect();
            Ok(spea2_truncate(&members, size)?
                .into_iter()
                .map(|k| nondominated[k])
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::pareto_front_indices;
    use crate::problems::ProblemId;
    use crate::variation::VariationConfig;

    fn config(id: AlgorithmId, budget: usize, seed: u64) -> AlgorithmConfig {
        let v = VariationConfig::with_indices(15.0, 20.0, 30).unwrap();
        AlgorithmConfig::new(id, v, budget, seed).with_pop_size(20)
    }

    #[test]
    fn zero_generations_returns_initial_front() {
        let p = Problem::new(ProblemId::Zdt1);
        for id in [AlgorithmId::Nsga2, AlgorithmId::Spea2] {
            let cfg = config(id, 20, 5);
            let res = run_generational(&p, &cfg, &mut RngStream::new(5)).unwrap();
            assert_eq!(res.evaluations_used, 20);
            let mut rng = RngStream::new(5);
            let mut evals = 0;
            let init = initial_population(&p, 20, &mut rng, &mut evals);
            let expected: Vec<Solution> = pareto_front_indices(&init).into_iter().map(|i| init[i].clone()).collect();
            let mut got = res.final_front.clone();
            let key = |s: &Solution| s.fitness().to_vec();
            got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            let mut exp = expected;
            exp.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            assert_eq!(got, exp, "{id}");
        }
    }

    #[test]
    fn budget_is_exact_and_runs_are_deterministic() {
        let p = Problem::new(ProblemId::Zdt2);
        for id in [AlgorithmId::Nsga2, AlgorithmId::Nsga2Star, AlgorithmId::Cnsga2, AlgorithmId::Spea2] {
            let cfg = config(id, 517, 11);
            let a = run_generational(&p, &cfg, &mut RngStream::new(11)).unwrap();
            let b = run_generational(&p, &cfg, &mut RngStream::new(11)).unwrap();
            assert_eq!(a.evaluations_used, 517);
            assert_eq!(a, b);
            assert!(a.final_front.len() <= 20);
            assert_eq!(pareto_front_indices(&a.final_front).len(), a.final_front.len());
        }
    }

    #[test]
    fn steady_state_ids_are_rejected() {
        let p = Problem::new(ProblemId::Zdt1);
        let cfg = config(AlgorithmId::EpsMoea, 100, 1)
            .with_eps(crate::dominance::EpsilonVector::uniform(0.01, 2).unwrap());
        assert!(run_generational(&p, &cfg, &mut RngStream::new(1)).is_err());
    }
}
