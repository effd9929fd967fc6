//! Run records and the results CSV.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::BenchError;

/// One row of `results.csv`. Missing metrics are empty fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub cardinality: usize,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub hv: Option<f64>,
    pub cs: Option<f64>,
    pub wall_ms: Option<f64>,
}

impl RunRecord {
    pub fn new(problem: &str, algorithm: &str, run: usize, seed: u64) -> Self {
        Self {
            problem: problem.to_string(),
            algorithm: algorithm.to_string(),
            run,
            seed,
            cardinality: 0,
            gamma: None,
            delta: None,
            hv: None,
            cs: None,
            wall_ms: None,
        }
    }

    /// Front file of this run relative to the output directory.
    pub fn front_file(&self) -> PathBuf {
        front_file(&self.problem, &self.algorithm, self.run)
    }

    pub fn metric(&self, metric: Metric) -> Option<f64> {
        match metric {
            Metric::Gamma => self.gamma,
            Metric::Delta => self.delta,
            Metric::Hv => self.hv,
            Metric::Cs => self.cs,
        }
    }
}

/// `fronts/{problem}_{algorithm}_{run}.txt`.
pub fn front_file(problem: &str, algorithm: &str, run: usize) -> PathBuf {
    Path::new("fronts").join(format!("{problem}_{algorithm}_{run}.txt"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Gamma,
    Delta,
    Hv,
    Cs,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Delta, Metric::Gamma, Metric::Hv, Metric::Cs];

    pub fn lower_is_better(self) -> bool {
        matches!(self, Metric::Gamma | Metric::Delta)
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Gamma => "gamma",
            Metric::Delta => "delta",
            Metric::Hv => "hv",
            Metric::Cs => "cs",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| BenchError::Config(format!("unknown metric '{s}'")))
    }
}

pub fn write_records_to<W: Write>(writer: W, records: &[RunRecord]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record([
            "problem",
            "algorithm",
            "run",
            "seed",
            "cardinality",
            "gamma",
            "delta",
            "hv",
            "cs",
            "wall_ms",
        ])?;
    }
    w.flush().map_err(|e| BenchError::Csv(e.into()))?;
    Ok(())
}

pub fn read_records_from<R: Read>(reader: R) -> Result<Vec<RunRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(reader);
    let records = r.deserialize().collect::<Result<Vec<RunRecord>, csv::Error>>()?;
    for rec in &records {
        for (name, v) in [("gamma", rec.gamma), ("delta", rec.delta), ("hv", rec.hv), ("cs", rec.cs)] {
            if v.is_some_and(|v| !v.is_finite()) {
                return Err(BenchError::Config(format!(
                    "{} {} run {}: {name} is not finite",
                    rec.problem, rec.algorithm, rec.run
                )));
            }
        }
    }
    Ok(records)
}

pub fn write_records(path: &Path, records: &[RunRecord]) -> Result<(), BenchError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    }
    let file = fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_records_to(std::io::BufWriter::new(file), records)
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>, BenchError> {
    let file = fs::File::open(path).map_err(|e| BenchError::io(path, e))?;
    read_records_from(file)
}
