use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use coneps_bench::config::{expand_epsilon, ExperimentConfig};
use coneps_bench::fronts::{format_points, front_rows, write_front};
use coneps_bench::records::read_records;
use coneps_bench::runner::{rescore, RESULTS_FILE};
use coneps_bench::stats::{algorithm_means, rank_table, summarize_records};
use coneps_bench::{default_config, parse_problem, run_experiment, run_single, EpsilonChoice, RunOptions};
use coneps_core::algorithms::AlgorithmId;
use coneps_core::problems::approximate_reference_front;

#[derive(Parser)]
#[command(name = "coneps", version, about = "Cone ε-dominance MOEA benchmark runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cell of an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: one per core).
        #[arg(long)]
        workers: Option<usize>,
        /// Base seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// One run of one algorithm on one problem.
    Single {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        algorithm: String,
        /// Evaluation budget (default: the problem's).
        #[arg(long)]
        evals: Option<usize>,
        #[arg(long, default_value_t = 100)]
        pop_size: usize,
        /// Comma-separated ε; one value is used for every objective.
        #[arg(long, value_delimiter = ',')]
        epsilon: Option<Vec<f64>>,
        /// Tabulated ε row used when --epsilon is absent.
        #[arg(long, default_value = "estimated")]
        epsilon_choice: EpsilonChoice,
        #[arg(long, default_value_t = 0.5)]
        kappa: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Reference-front file (default: built in).
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Recompute metrics from the stored front files.
    Metrics {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Config providing reference-front overrides and metric toggles.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Rank algorithms on block-adjusted metric means.
    Rank {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Mean, standard error and median per cell.
    Summary {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Write a reference front (grid approximation for Pol, DTLZ7 and DTLZ8).
    Front {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 300)]
        resolution: usize,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            workers,
            seed,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let outcome = run_experiment(
                &cfg,
                &RunOptions {
                    workers,
                    out_dir: out,
                    base_seed: seed,
                },
            )?;
            println!(
                "{} runs written to {}",
                outcome.records.len(),
                outcome.out_dir.join(RESULTS_FILE).display()
            );
            if !outcome.failures.is_empty() {
                eprintln!("{} runs failed; see failures.txt", outcome.failures.len());
            }
        }
        Command::Single {
            problem,
            algorithm,
            evals,
            pop_size,
            epsilon,
            epsilon_choice,
            kappa,
            seed,
            out,
            reference,
        } => {
            let problem = parse_problem(&problem)?;
            let algorithm: AlgorithmId = algorithm.parse()?;
            let mut cfg = default_config(&problem, algorithm, epsilon_choice, seed)?
                .with_pop_size(pop_size)
                .with_kappa(kappa);
            if let Some(b) = evals {
                cfg.budget = b;
            }
            if let Some(e) = epsilon {
                cfg.eps = Some(expand_epsilon(&e, problem.m())?);
            }
            let (rec, _) = run_single(&problem, &cfg, reference.as_deref(), &out, true)?;
            let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
            println!(
                "{} {} seed {}: |H| = {}, gamma = {}, delta = {}, hv = {}",
                rec.problem,
                rec.algorithm,
                rec.seed,
                rec.cardinality,
                show(rec.gamma),
                show(rec.delta),
                show(rec.hv)
            );
        }
        Command::Metrics { out, config } => {
            let cfg = config.as_deref().map(ExperimentConfig::load).transpose()?;
            let records = rescore(&out, cfg.as_ref())?;
            println!("rescored {} runs", records.len());
        }
        Command::Rank { out } => {
            let records = read_records(&out.join(RESULTS_FILE))?;
            let means = algorithm_means(&records);
            if means.len() < 2 {
                bail!("ranking needs at least two algorithms");
            }
            let table = rank_table(&means);
            print!("{:<14}", "algorithm");
            for m in &table.metrics {
                print!("{:>8}", m.name());
            }
            println!("{:>8}{:>8}", "avg", "final");
            for row in &table.rows {
                print!("{:<14}", row.algorithm);
                for r in &row.ranks {
                    print!("{r:>8}");
                }
                println!("{:>8.3}{:>8}", row.average, row.final_rank);
            }
        }
        Command::Summary { out } => {
            let records = read_records(&out.join(RESULTS_FILE))?;
            println!("problem,algorithm,metric,n,mean,se,median");
            for cell in summarize_records(&records) {
                let c = cell.cardinality;
                println!(
                    "{},{},cardinality,{},{},{},{}",
                    cell.problem, cell.algorithm, c.n, c.mean, c.se, c.median
                );
                for (m, s) in &cell.metrics {
                    println!(
                        "{},{},{},{},{},{},{}",
                        cell.problem, cell.algorithm, m, s.n, s.mean, s.se, s.median
                    );
                }
            }
        }
        Command::Front {
            problem,
            resolution,
            out,
        } => {
            let problem = parse_problem(&problem)?;
            let front = approximate_reference_front(&problem, resolution)
                .with_context(|| format!("approximating the {} front", problem.label()))?;
            let rows = front_rows(&front);
            match out {
                Some(path) => write_front(&path, &rows)?,
                None => print!("{}", format_points(&rows)),
            }
        }
    }
    Ok(())
}
