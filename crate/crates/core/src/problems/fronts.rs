//! Reference Pareto fronts: validation, text parsing, analytic sampling and
//! grid approximation for the fronts without a closed form.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use super::{deb52_f1, dtlz7_f3, zdt6_f1, Problem, ProblemId};
use crate::dominance::dominates;
use crate::objective::{DecisionVector, ObjectiveVector};
use crate::{Error, Result};

/// Where a reference front came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrontSource {
    Analytic,
    Approximate,
    File(String),
}

/// A validated set of mutually nondominated points sampled from a true front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    points: Vec<ObjectiveVector>,
    source: FrontSource,
}

impl ReferenceFront {
    /// Validates that `points` is nonempty, has a common dimension and is
    /// mutually Pareto-nondominated.
    pub fn new(points: Vec<Vec<f64>>, source: FrontSource) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?.len();
        let mut checked = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != first {
                return Err(Error::DimensionMismatch {
                    expected: first,
                    found: p.len(),
                });
            }
            checked.push(ObjectiveVector::new(p)?);
        }
        if let Some((dominator, dominated)) = find_dominated_pair(&checked) {
            return Err(Error::DominatedReferencePoint { dominator, dominated });
        }
        Ok(Self {
            points: checked,
            source,
        })
    }

    /// Parses whitespace-separated rows; blank lines and lines starting with
    /// `#` are skipped.
    pub fn parse(text: &str, source: FrontSource) -> Result<Self> {
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: alloc::format!("'{tok}' is not a number"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            if let Some(expected) = points.first().map(Vec::len) {
                if row.len() != expected {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: alloc::format!("expected {expected} values, found {}", row.len()),
                    });
                }
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "non-finite value".to_string(),
                });
            }
            points.push(row);
        }
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        Self::new(points, source)
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn source(&self) -> &FrontSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Objective count.
    pub fn m(&self) -> usize {
        self.points[0].len()
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// A dominator always precedes what it dominates in lexicographic order, so
/// each point only needs checking against the points sorted before it.
fn find_dominated_pair(points: &[ObjectiveVector]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]));
    if points[0].len() == 2 {
        // after sorting, a nondominated 2-D set has strictly decreasing f2
        // except for exact duplicates
        for w in order.windows(2) {
            let (a, b) = (&points[w[0]], &points[w[1]]);
            if dominates(a, b) {
                return Some((w[0], w[1]));
            }
        }
        let mut best = 0;
        for (k, &i) in order.iter().enumerate().skip(1) {
            if dominates(&points[order[best]], &points[i]) {
                return Some((order[best], i));
            }
            if points[i][1] < points[order[best]][1] {
                best = k;
            }
        }
        return None;
    }
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[..k] {
            if dominates(&points[j], &points[i]) {
                return Some((j, i));
            }
        }
    }
    None
}

/// Nondominated subset of `points` with exact duplicates removed, in
/// lexicographic order.
pub fn nondominated_filter(mut points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    points.sort_by(|a, b| lex_cmp(a, b));
    points.dedup();
    let mut kept: Vec<Vec<f64>> = Vec::new();
    if points.first().is_some_and(|p| p.len() == 2) {
        let mut best = f64::INFINITY;
        for p in points {
            if p[1] < best {
                best = p[1];
                kept.push(p);
            }
        }
        return kept;
    }
    for p in points {
        if !kept.iter().any(|q| dominates(q, &p)) {
            kept.push(p);
        }
    }
    kept
}

/// All nonnegative integer vectors of length `m` summing to `h`.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, left: usize, slots: usize, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in (0..=left).rev() {
            prefix.push(v);
            fill(prefix, left - v, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        fill(&mut Vec::with_capacity(m), h, m, &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Largest lattice resolution whose point count does not exceed `count`.
fn lattice_resolution(m: usize, count: usize) -> usize {
    let mut h = 1;
    while binomial(h + 1 + m - 1, m - 1) <= count {
        h += 1;
    }
    h
}

fn minimize_unimodal(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5.0f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - ratio * (hi - lo);
        let b = lo + ratio * (hi - lo);
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    f(0.5 * (lo + hi))
}

/// Smallest attainable Deb52 `f1` (≈ 0.1797).
pub fn deb52_f1_min() -> f64 {
    minimize_unimodal(deb52_f1, 0.0, 0.1)
}

/// Smallest attainable ZDT6 `f1` (≈ 0.2807753191).
pub fn zdt6_f1_min() -> f64 {
    minimize_unimodal(zdt6_f1, 0.0, 1.0 / 6.0)
}

fn linspace(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let step = if count > 1 { (hi - lo) / (count - 1) as f64 } else { 0.0 };
    (0..count).map(move |i| if i + 1 == count { hi } else { lo + step * i as f64 })
}

fn curve(count: usize, f: impl Fn(f64) -> Vec<f64>) -> Vec<Vec<f64>> {
    linspace(0.0, FRAC_PI_2, count).map(f).collect()
}

/// `count` points spaced uniformly along the natural parameterization of the
/// problem's analytic front. Surfaces use the largest simplex lattice with at
/// most `count` points.
pub fn sample_reference_front(problem: &Problem, count: usize) -> Result<ReferenceFront> {
    if count < 2 {
        return Err(Error::InvalidArgument("a reference front needs at least 2 points".into()));
    }
    let m = problem.m();
    let points: Vec<Vec<f64>> = match problem.id() {
        ProblemId::Deb52 => linspace(deb52_f1_min(), 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1.powi(10)])
            .collect(),
        ProblemId::Zdt1 | ProblemId::Zdt4 => linspace(0.0, 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1.sqrt()])
            .collect(),
        ProblemId::Zdt2 => linspace(0.0, 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1 * f1])
            .collect(),
        ProblemId::Zdt6 => linspace(zdt6_f1_min(), 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1 * f1])
            .collect(),
        ProblemId::Zdt3 => {
            let dense = linspace(0.0, 1.0, 200 * count)
                .map(|f1| vec![f1, 1.0 - f1.sqrt() - f1 * (10.0 * PI * f1).sin()])
                .collect();
            let front = nondominated_filter(dense);
            let step = front.len() as f64 / count as f64;
            let mut picked: Vec<Vec<f64>> = (0..count)
                .map(|i| front[(i as f64 * step) as usize].clone())
                .collect();
            picked.dedup();
            if picked.last() != front.last() {
                *picked.last_mut().expect("count >= 2") = front[front.len() - 1].clone();
            }
            picked
        }
        ProblemId::Dtlz1 => {
            let h = lattice_resolution(m, count);
            simplex_lattice(m, h)
                .into_iter()
                .map(|w| w.iter().map(|&k| 0.5 * k as f64 / h as f64).collect())
                .collect()
        }
        ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4 => {
            let h = lattice_resolution(m, count);
            simplex_lattice(m, h)
                .into_iter()
                .map(|w| {
                    let norm = w.iter().map(|&k| (k * k) as f64).sum::<f64>().sqrt();
                    w.iter().map(|&k| k as f64 / norm).collect()
                })
                .collect()
        }
        ProblemId::Dtlz5 | ProblemId::Dtlz6 => curve(count, |t| {
            let c = t.cos() * FRAC_1_SQRT_2;
            vec![c, c, t.sin()]
        }),
        ProblemId::Dtlz9 => curve(count, |t| vec![t.cos(), t.cos(), t.sin()]),
        id @ (ProblemId::Pol | ProblemId::Dtlz7 | ProblemId::Dtlz8) => {
            return Err(Error::NoClosedForm(id))
        }
    };
    ReferenceFront::new(points, FrontSource::Analytic)
}

/// Grid approximation of a front: evaluates a `resolution × resolution` grid
/// over the front's two free parameters and keeps the nondominated points.
///
/// Pol grids its decision space, DTLZ7 grids `(x1, x2)` at the optimal
/// distance variables, and DTLZ8 grids `(f1, f2)` with the smallest feasible
/// `f3`. Problems with an analytic front fall back to
/// [`sample_reference_front`] with `resolution` points.
pub fn approximate_reference_front(problem: &Problem, resolution: usize) -> Result<ReferenceFront> {
    if resolution < 2 {
        return Err(Error::InvalidArgument("grid resolution must be at least 2".into()));
    }
    let grid = |lo: f64, hi: f64| -> Vec<(f64, f64)> {
        let axis: Vec<f64> = linspace(lo, hi, resolution).collect();
        axis.iter()
            .flat_map(|&a| axis.iter().map(move |&b| (a, b)))
            .collect()
    };
    let raw: Vec<Vec<f64>> = match problem.id() {
        ProblemId::Pol => grid(-PI, PI)
            .into_iter()
            .map(|(a, b)| {
                problem
                    .evaluate_unchecked(DecisionVector::new_unchecked(vec![a, b]))
                    .f
                    .into_inner()
            })
            .collect(),
        ProblemId::Dtlz7 => grid(0.0, 1.0)
            .into_iter()
            .map(|(a, b)| vec![a, b, dtlz7_f3(a, b, 1.0)])
            .collect(),
        ProblemId::Dtlz8 => grid(0.0, 1.0)
            .into_iter()
            .map(|(a, b)| {
                let f3 = (1.0 - 4.0 * a)
                    .max(1.0 - 4.0 * b)
                    .max(0.5 * (1.0 - a - b))
                    .max(0.0);
                vec![a, b, f3]
            })
            .collect(),
        _ => return sample_reference_front(problem, resolution),
    };
    ReferenceFront::new(nondominated_filter(raw), FrontSource::Approximate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let f = ReferenceFront::parse("0 1\n1 0\n", FrontSource::Analytic).unwrap();
        assert_eq!(f.len(), 2);
        assert!(matches!(
            ReferenceFront::parse("0 0\n1 1\n", FrontSource::Analytic),
            Err(Error::DominatedReferencePoint { dominator: 0, dominated: 1 })
        ));
        assert_eq!(ReferenceFront::parse("", FrontSource::Analytic), Err(Error::EmptySet));
        assert_eq!(
            ReferenceFront::parse("# header\n\n0 1\n1 x\n", FrontSource::Analytic),
            Err(Error::Parse {
                line: 4,
                message: "'x' is not a number".into()
            })
        );
        assert!(matches!(
            ReferenceFront::parse("0 1\n1 0 2\n", FrontSource::Analytic),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn three_objective_validation() {
        let ok = vec![vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]];
        assert!(ReferenceFront::new(ok, FrontSource::Analytic).is_ok());
        let bad = vec![vec![0.5, 0.5, 0.5], vec![0.0, 1.0, 0.0], vec![0.4, 0.5, 0.5]];
        assert_eq!(
            ReferenceFront::new(bad, FrontSource::Analytic),
            Err(Error::DominatedReferencePoint { dominator: 2, dominated: 0 })
        );
    }

    #[test]
    fn two_objective_validation_catches_non_adjacent_dominance() {
        let bad = vec![vec![0.0, 1.0], vec![0.5, 0.2], vec![0.6, 0.3]];
        assert_eq!(
            ReferenceFront::new(bad, FrontSource::Analytic),
            Err(Error::DominatedReferencePoint { dominator: 1, dominated: 2 })
        );
    }

    #[test]
    fn zdt1_three_points() {
        let f = sample_reference_front(&Problem::new(ProblemId::Zdt1), 3).unwrap();
        let pts: Vec<&[f64]> = f.points().iter().map(|p| p.as_slice()).collect();
        assert_eq!(pts[0], &[0.0, 1.0]);
        assert_eq!(pts[1][0], 0.5);
        assert!((pts[1][1] - 0.29289321881345254).abs() < 1e-15);
        assert_eq!(pts[2], &[1.0, 0.0]);
    }

    #[test]
    fn file_only_problems_have_no_closed_form() {
        for id in [ProblemId::Pol, ProblemId::Dtlz7, ProblemId::Dtlz8] {
            assert_eq!(sample_reference_front(&Problem::new(id), 10), Err(Error::NoClosedForm(id)));
        }
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(simplex_lattice(3, 2).len(), 6);
        assert_eq!(lattice_resolution(3, 100), 12);
        let f = sample_reference_front(&Problem::new(ProblemId::Dtlz2), 100).unwrap();
        assert_eq!(f.len(), 91);
    }

    #[test]
    fn f1_minima() {
        assert!((zdt6_f1_min() - 0.2807753191).abs() < 1e-9);
        assert!((deb52_f1_min() - 0.1797).abs() < 1e-3);
    }

    #[test]
    fn filter_removes_dominated_and_duplicates() {
        let kept = nondominated_filter(vec![
            vec![1.0, 1.0],
            vec![0.0, 2.0],
            vec![1.0, 1.0],
            vec![2.0, 2.0],
            vec![2.0, 0.5],
        ]);
        assert_eq!(kept, vec![vec![0.0, 2.0], vec![1.0, 1.0], vec![2.0, 0.5]]);
    }
}
