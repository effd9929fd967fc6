//! Campaign runner and metric scoring.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use coneps_core::algorithms::{run, AlgorithmConfig};
use coneps_core::metrics::{convergence_gamma, coverage_many_sets, diversity_delta, hypervolume, sort_points};
use coneps_core::objective::reference_point;
use coneps_core::problems::{Problem, ReferenceFront};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, MetricToggles};
use crate::fronts::{front_rows, read_front, reference_front, write_front};
use crate::records::{read_records, write_records, RunRecord};
use crate::{parse_problem, BenchError};

pub const RESULTS_FILE: &str = "results.csv";
pub const FAILURES_FILE: &str = "failures.txt";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses one per core.
    pub workers: Option<usize>,
    /// Overrides the config's output directory.
    pub out_dir: Option<PathBuf>,
    /// Overrides the config's base seed.
    pub base_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub out_dir: PathBuf,
    pub records: Vec<RunRecord>,
    pub failures: Vec<Failure>,
}

/// A reference front and, when hypervolume applies, its reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceData {
    pub front: Vec<Vec<f64>>,
    pub hv_reference: Option<Vec<f64>>,
}

impl ReferenceData {
    /// The hypervolume reference point lies 10% beyond the front's upper
    /// boundary.
    pub fn new(problem: &Problem, front: &ReferenceFront) -> Result<Self, BenchError> {
        let rows = front_rows(front);
        let hv_reference = if problem.id().supports_hypervolume() {
            Some(reference_point(&rows, 0.1)?.point)
        } else {
            None
        };
        Ok(Self {
            front: rows,
            hv_reference,
        })
    }
}

/// Feasible final-front objective values, sorted.
fn feasible_front(config: &AlgorithmConfig, problem: &Problem) -> Result<(Vec<Vec<f64>>, f64), String> {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| run(problem, config)))
        .map_err(|_| "run panicked".to_string())?
        .map_err(|e| e.to_string())?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut points: Vec<Vec<f64>> = result
        .final_front
        .iter()
        .filter(|s| s.is_feasible())
        .map(|s| s.f.as_slice().to_vec())
        .collect();
    sort_points(&mut points);
    Ok((points, ms))
}

/// Fills cardinality, γ, Δ, HV and CS. CS is computed per (problem, run)
/// group across the algorithms with a nonempty front.
pub fn score_runs(
    records: &mut [RunRecord],
    fronts: &[Vec<Vec<f64>>],
    references: &BTreeMap<String, ReferenceData>,
    toggles: &MetricToggles,
) {
    assert_eq!(records.len(), fronts.len(), "one front per record");
    for (r, f) in records.iter_mut().zip(fronts) {
        r.cardinality = f.len();
        r.gamma = None;
        r.delta = None;
        r.hv = None;
        r.cs = None;
        let Some(refd) = references.get(&r.problem) else { continue };
        if f.is_empty() {
            continue;
        }
        if toggles.gamma {
            r.gamma = convergence_gamma(f, &refd.front).ok();
        }
        if toggles.delta {
            r.delta = diversity_delta(f, &refd.front).ok();
        }
        if toggles.hv {
            r.hv = refd.hv_reference.as_ref().and_then(|p| hypervolume(f, p).ok());
        }
    }
    if !toggles.cs {
        return;
    }
    let mut groups: BTreeMap<(String, usize), Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        if !fronts[i].is_empty() {
            groups.entry((r.problem.clone(), r.run)).or_default().push(i);
        }
    }
    for idx in groups.values().filter(|g| g.len() >= 2) {
        let sets: Vec<&[Vec<f64>]> = idx.iter().map(|&i| fronts[i].as_slice()).collect();
        if let Ok(cs) = coverage_many_sets(&sets) {
            for (&i, v) in idx.iter().zip(cs) {
                records[i].cs = Some(v);
            }
        }
    }
}

fn load_references<'a>(
    problems: impl IntoIterator<Item = &'a Problem>,
    config: Option<&ExperimentConfig>,
) -> Result<BTreeMap<String, ReferenceData>, BenchError> {
    let mut out = BTreeMap::new();
    for p in problems {
        let label = p.label();
        if out.contains_key(&label) {
            continue;
        }
        let path = config.and_then(|c| c.reference_path(&label));
        let front = reference_front(p, path.as_deref())?;
        out.insert(label, ReferenceData::new(p, &front)?);
    }
    Ok(out)
}

fn write_failures(path: &Path, failures: &[Failure]) -> Result<(), BenchError> {
    let text: String = failures
        .iter()
        .map(|f| format!("{} {} run {} seed {}: {}\n", f.problem, f.algorithm, f.run, f.seed, f.message))
        .collect();
    fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

type JobResult = Result<(Vec<Vec<f64>>, f64), String>;

/// Runs every (cell, run) pair with seed `base_seed + run`, writes one front
/// file per run, `results.csv` and `failures.txt`, and returns the records.
///
/// Cells run concurrently; front files are written by a single collector.
/// Configuration errors surface before any run starts; a failing run is
/// logged to `failures.txt` and left out of the records.
pub fn run_experiment(config: &ExperimentConfig, options: &RunOptions) -> Result<Outcome, BenchError> {
    let cells = config.resolve()?;
    let references = load_references(cells.iter().map(|c| &c.problem), Some(config))?;
    let out_dir = options.out_dir.clone().unwrap_or_else(|| config.output.clone());
    let base_seed = options.base_seed.unwrap_or(config.base_seed);
    fs::create_dir_all(out_dir.join("fronts")).map_err(|e| BenchError::io(&out_dir, e))?;

    let jobs: Vec<RunRecord> = cells
        .iter()
        .flat_map(|c| {
            (0..config.runs).map(move |r| {
                RunRecord::new(&c.label(), c.config.algorithm.name(), r, base_seed.wrapping_add(r as u64))
            })
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.unwrap_or(0))
        .build()
        .map_err(|e| BenchError::Config(e.to_string()))?;

    let mut results: Vec<Option<JobResult>> = vec![None; jobs.len()];
    let runs = config.runs;
    let (tx, rx) = mpsc::channel::<(usize, JobResult)>();
    std::thread::scope(|scope| -> Result<(), BenchError> {
        let cells = &cells;
        let jobs_ref = &jobs;
        scope.spawn(move || {
            pool.install(|| {
                (0..jobs_ref.len()).into_par_iter().for_each_with(tx, |tx, j| {
                    let cell = &cells[j / runs];
                    let mut cfg = cell.config.clone();
                    cfg.seed = jobs_ref[j].seed;
                    let _ = tx.send((j, feasible_front(&cfg, &cell.problem)));
                });
            });
        });
        for (j, res) in rx {
            let rec = &jobs[j];
            match &res {
                Ok((front, _)) => {
                    write_front(&out_dir.join(rec.front_file()), front)?;
                    log::info!("{} {} run {}: {} points", rec.problem, rec.algorithm, rec.run, front.len());
                }
                Err(msg) => log::warn!("{} {} run {} failed: {msg}", rec.problem, rec.algorithm, rec.run),
            }
            results[j] = Some(res);
        }
        Ok(())
    })?;

    let mut records = Vec::new();
    let mut fronts = Vec::new();
    let mut failures = Vec::new();
    for (rec, res) in jobs.into_iter().zip(results) {
        match res.expect("every job reports back") {
            Ok((front, ms)) => {
                let mut rec = rec;
                if config.record_wall_time {
                    rec.wall_ms = Some(ms);
                }
                records.push(rec);
                fronts.push(front);
            }
            Err(message) => failures.push(Failure {
                problem: rec.problem,
                algorithm: rec.algorithm,
                run: rec.run,
                seed: rec.seed,
                message,
            }),
        }
    }
    score_runs(&mut records, &fronts, &references, &config.metrics);
    write_records(&out_dir.join(RESULTS_FILE), &records)?;
    write_failures(&out_dir.join(FAILURES_FILE), &failures)?;
    Ok(Outcome {
        out_dir,
        records,
        failures,
    })
}

/// One run of `config` on `problem`, scored against the default reference
/// front (or the one at `reference`), written to `out_dir`.
pub fn run_single(
    problem: &Problem,
    config: &AlgorithmConfig,
    reference: Option<&Path>,
    out_dir: &Path,
    record_wall_time: bool,
) -> Result<(RunRecord, Vec<Vec<f64>>), BenchError> {
    config.validate(problem)?;
    let label = problem.label();
    let front = reference_front(problem, reference)?;
    let mut references = BTreeMap::new();
    references.insert(label.clone(), ReferenceData::new(problem, &front)?);
    let (points, ms) = feasible_front(config, problem).map_err(|m| BenchError::Config(format!("run failed: {m}")))?;
    let mut rec = RunRecord::new(&label, config.algorithm.name(), 0, config.seed);
    if record_wall_time {
        rec.wall_ms = Some(ms);
    }
    write_front(&out_dir.join(rec.front_file()), &points)?;
    let mut records = vec![rec];
    score_runs(&mut records, std::slice::from_ref(&points), &references, &MetricToggles::default());
    write_records(&out_dir.join(RESULTS_FILE), &records)?;
    let rec = records.pop().expect("one record");
    Ok((rec, points))
}

/// Recomputes the metrics of `out_dir/results.csv` from the stored front
/// files and rewrites the CSV. Seeds and wall times are kept.
pub fn rescore(out_dir: &Path, config: Option<&ExperimentConfig>) -> Result<Vec<RunRecord>, BenchError> {
    let results = out_dir.join(RESULTS_FILE);
    let mut records = read_records(&results)?;
    let problems = records
        .iter()
        .map(|r| parse_problem(&r.problem))
        .collect::<Result<Vec<_>, _>>()?;
    let references = load_references(problems.iter(), config)?;
    let fronts = records
        .iter()
        .map(|r| read_front(&out_dir.join(r.front_file())))
        .collect::<Result<Vec<_>, _>>()?;
    let toggles = config.map(|c| c.metrics.clone()).unwrap_or_default();
    let wall: Vec<Option<f64>> = records.iter().map(|r| r.wall_ms).collect();
    score_runs(&mut records, &fronts, &references, &toggles);
    for (r, w) in records.iter_mut().zip(wall) {
        r.wall_ms = w;
    }
    write_records(&results, &records)?;
    Ok(records)
}
