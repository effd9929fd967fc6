//! Front files and reference fronts.
//!
//! A front file holds one point per line as whitespace-separated decimals.
//! Blank lines and `#` comments are ignored. An empty file is an empty front.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use coneps_core::problems::{sample_reference_front, FrontSource, Problem, ProblemId, ReferenceFront};

use crate::BenchError;

/// Points sampled from an analytic two-objective front.
pub const ANALYTIC_POINTS_2D: usize = 2000;

/// Upper limit on the simplex lattice used for analytic surfaces.
pub const ANALYTIC_POINTS_SURFACE: usize = 5000;

const BUNDLED_POL: &str = include_str!("../data/fronts/POL.txt");
const BUNDLED_DTLZ7: &str = include_str!("../data/fronts/DTLZ7.txt");
const BUNDLED_DTLZ8: &str = include_str!("../data/fronts/DTLZ8.txt");

/// Formats points with Rust's shortest round-trip representation.
pub fn format_points<P: AsRef<[f64]>>(points: &[P]) -> String {
    let mut out = String::new();
    for p in points {
        let mut first = true;
        for v in p.as_ref() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    out
}

/// Parses front-file text. Rows must agree in length and be finite.
pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>, String> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("line {}: '{tok}' is not a finite number", i + 1)),
            })
            .collect::<Result<Vec<f64>, String>>()?;
        if let Some(first) = points.first() {
            if first.len() != row.len() {
                return Err(format!("line {}: expected {} values, found {}", i + 1, first.len(), row.len()));
            }
        }
        points.push(row);
    }
    Ok(points)
}

pub fn write_front<P: AsRef<[f64]>>(path: &Path, points: &[P]) -> Result<(), BenchError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    }
    fs::write(path, format_points(points)).map_err(|e| BenchError::io(path, e))
}

pub fn read_front(path: &Path) -> Result<Vec<Vec<f64>>, BenchError> {
    let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_points(&text).map_err(|message| BenchError::Format {
        path: path.to_path_buf(),
        message,
    })
}

/// The bundled grid approximation for a problem without a closed-form front.
pub fn bundled_front(id: ProblemId) -> Option<&'static str> {
    match id {
        ProblemId::Pol => Some(BUNDLED_POL),
        ProblemId::Dtlz7 => Some(BUNDLED_DTLZ7),
        ProblemId::Dtlz8 => Some(BUNDLED_DTLZ8),
        _ => None,
    }
}

/// Reference front for `problem`: the file at `path` when given, the bundled
/// approximation for Pol/DTLZ7/DTLZ8, otherwise a dense analytic sample.
pub fn reference_front(problem: &Problem, path: Option<&Path>) -> Result<ReferenceFront, BenchError> {
    let front = if let Some(path) = path {
        let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        ReferenceFront::parse(&text, FrontSource::File(path.display().to_string()))?
    } else if let Some(text) = bundled_front(problem.id()) {
        ReferenceFront::parse(text, FrontSource::File(format!("bundled:{}", problem.id())))?
    } else {
        let count = if problem.m() == 2 {
            ANALYTIC_POINTS_2D
        } else {
            ANALYTIC_POINTS_SURFACE
        };
        sample_reference_front(problem, count)?
    };
    if front.m() != problem.m() {
        return Err(BenchError::Config(format!(
            "reference front for {} has {} objectives, expected {}",
            problem.label(),
            front.m(),
            problem.m()
        )));
    }
    Ok(front)
}

/// Plain coordinate rows of a reference front.
pub fn front_rows(front: &ReferenceFront) -> Vec<Vec<f64>> {
    front.points().iter().map(|p| p.as_slice().to_vec()).collect()
}
