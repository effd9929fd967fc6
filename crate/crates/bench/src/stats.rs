//! Block-effect removal, mean-rank tables and per-cell summaries.

use std::collections::BTreeMap;

use crate::records::{Metric, RunRecord};

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Subtracts each block's offset from the grand mean: `y − (ȳ_block − ȳ)`.
///
/// With fewer than two blocks the values come back unchanged and a warning
/// is logged.
pub fn remove_block_effects<K: Ord + Clone>(blocks: &[K], values: &[f64]) -> Vec<f64> {
    assert_eq!(blocks.len(), values.len(), "one block label per value");
    let mut groups: BTreeMap<K, Vec<f64>> = BTreeMap::new();
    for (b, &v) in blocks.iter().zip(values) {
        groups.entry(b.clone()).or_default().push(v);
    }
    if groups.len() < 2 {
        log::warn!("block-effect removal needs at least two blocks; values left unchanged");
        return values.to_vec();
    }
    let grand = mean(values);
    let offsets: BTreeMap<K, f64> = groups.into_iter().map(|(k, v)| (k, mean(&v) - grand)).collect();
    blocks.iter().zip(values).map(|(b, v)| v - offsets[b]).collect()
}

/// Block-adjusted values of `metric`, with problems as blocks. Records
/// without the metric map to `None`.
pub fn remove_block_effects_records(records: &[RunRecord], metric: Metric) -> Vec<Option<f64>> {
    let present: Vec<(usize, f64)> = records
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.metric(metric).map(|v| (i, v)))
        .collect();
    let blocks: Vec<&str> = present.iter().map(|&(i, _)| records[i].problem.as_str()).collect();
    let values: Vec<f64> = present.iter().map(|&(_, v)| v).collect();
    let adjusted = remove_block_effects(&blocks, &values);
    let mut out = vec![None; records.len()];
    for ((i, _), v) in present.into_iter().zip(adjusted) {
        out[i] = Some(v);
    }
    out
}

/// Ranks with ties sharing the mean of their positions, so the ranks of `n`
/// items always sum to `n(n+1)/2`. Smaller keys rank first.
pub fn mean_ranks(keys: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    let mut ranks = vec![0.0; keys.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && keys[order[end]] == keys[order[start]] {
            end += 1;
        }
        let shared = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = shared;
        }
        start = end;
    }
    ranks
}

/// Ranks of per-algorithm values of one metric; best gets rank 1.
pub fn metric_ranks(values: &[f64], metric: Metric) -> Vec<f64> {
    if metric.lower_is_better() {
        mean_ranks(values)
    } else {
        mean_ranks(&values.iter().map(|v| -v).collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub algorithm: String,
    /// Rank per metric column, in [`RankTable::metrics`] order.
    pub ranks: Vec<f64>,
    pub average: f64,
    pub final_rank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub metrics: Vec<Metric>,
    pub rows: Vec<RankRow>,
}

impl RankTable {
    /// Builds the table from ready-made per-metric ranks; `ranks[i][j]` is
    /// algorithm `i` on metric `j`. The final rank orders the averages.
    pub fn from_ranks(algorithms: &[String], metrics: &[Metric], ranks: &[Vec<f64>]) -> Self {
        let averages: Vec<f64> = ranks.iter().map(|r| mean(r)).collect();
        let finals = mean_ranks(&averages);
        let rows = algorithms
            .iter()
            .zip(ranks)
            .zip(averages.iter().zip(finals))
            .map(|((a, r), (&average, final_rank))| RankRow {
                algorithm: a.clone(),
                ranks: r.clone(),
                average,
                final_rank,
            })
            .collect();
        Self {
            metrics: metrics.to_vec(),
            rows,
        }
    }

    pub fn row(&self, algorithm: &str) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.algorithm == algorithm)
    }
}

/// Rank table from per-algorithm metric means. Metrics missing for any
/// algorithm are left out.
pub fn rank_table(means: &BTreeMap<String, BTreeMap<Metric, f64>>) -> RankTable {
    let algorithms: Vec<String> = means.keys().cloned().collect();
    let metrics: Vec<Metric> = Metric::ALL
        .into_iter()
        .filter(|m| means.values().all(|row| row.contains_key(m)))
        .collect();
    let mut ranks = vec![Vec::with_capacity(metrics.len()); algorithms.len()];
    for &metric in &metrics {
        let values: Vec<f64> = algorithms.iter().map(|a| means[a][&metric]).collect();
        for (row, r) in ranks.iter_mut().zip(metric_ranks(&values, metric)) {
            row.push(r);
        }
    }
    RankTable::from_ranks(&algorithms, &metrics, &ranks)
}

/// Per-algorithm means of the block-adjusted metrics over all records.
pub fn algorithm_means(records: &[RunRecord]) -> BTreeMap<String, BTreeMap<Metric, f64>> {
    let mut sums: BTreeMap<String, BTreeMap<Metric, (f64, usize)>> = BTreeMap::new();
    for metric in Metric::ALL {
        for (r, v) in records.iter().zip(remove_block_effects_records(records, metric)) {
            if let Some(v) = v {
                let e = sums
                    .entry(r.algorithm.clone())
                    .or_default()
                    .entry(metric)
                    .or_insert((0.0, 0));
                e.0 += v;
                e.1 += 1;
            }
        }
    }
    let mut out: BTreeMap<String, BTreeMap<Metric, f64>> = BTreeMap::new();
    for r in records {
        out.entry(r.algorithm.clone()).or_default();
    }
    for (alg, per) in sums {
        out.insert(alg, per.into_iter().map(|(m, (s, n))| (m, s / n as f64)).collect());
    }
    out
}

/// Mean, standard error (`s/√n`) and median of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub se: f64,
    pub median: f64,
}

/// `None` for an empty sample; a single value has standard error 0.
pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len();
    let mu = mean(values);
    let se = if n > 1 {
        let var = values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (n - 1) as f64;
        var.sqrt() / (n as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Some(Summary { n, mean: mu, se, median })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub problem: String,
    pub algorithm: String,
    pub cardinality: Summary,
    pub metrics: BTreeMap<Metric, Summary>,
}

/// Summaries per (problem, algorithm) cell, in sorted cell order.
pub fn summarize_records(records: &[RunRecord]) -> Vec<CellSummary> {
    let mut cells: BTreeMap<(String, String), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        cells.entry((r.problem.clone(), r.algorithm.clone())).or_default().push(r);
    }
    cells
        .into_iter()
        .map(|((problem, algorithm), rs)| {
            let card: Vec<f64> = rs.iter().map(|r| r.cardinality as f64).collect();
            let metrics = Metric::ALL
                .into_iter()
                .filter_map(|m| {
                    let v: Vec<f64> = rs.iter().filter_map(|r| r.metric(m)).collect();
                    summarize(&v).map(|s| (m, s))
                })
                .collect();
            CellSummary {
                problem,
                algorithm,
                cardinality: summarize(&card).expect("cells are nonempty"),
                metrics,
            }
        })
        .collect()
}
