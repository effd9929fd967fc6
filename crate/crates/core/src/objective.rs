//! Value types shared by every other module.
//!
//! All relations in this crate assume minimization. Problems with maximized
//! objectives negate them when they are evaluated; [`ObjectiveSense`] is only
//! kept around for box indexing.

use alloc::vec::Vec;
use core::ops::Deref;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// A point in m-dimensional objective space (m ≥ 2, every component finite).
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewObjectives {
                required: 2,
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ObjectiveVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Per-variable box constraints of a decision space.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidArgument("bounds need at least one variable".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(Error::InvalidArgument("every lower bound must be <= its upper bound".into()));
        }
        Ok(Self { lower, upper })
    }

    /// The same interval for all `n` variables.
    pub fn uniform(n: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(alloc::vec![lower; n], alloc::vec![upper; n])
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn clamp(&self, i: usize, v: f64) -> f64 {
        v.max(self.lower[i]).min(self.upper[i])
    }
}

/// A decision vector that lies inside its declared bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector(Vec<f64>);

impl DecisionVector {
    pub fn new(values: Vec<f64>, bounds: &Bounds) -> Result<Self> {
        if values.len() != bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: bounds.len(),
                found: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            let (lower, upper) = (bounds.lower[index], bounds.upper[index]);
            if !(lower..=upper).contains(&value) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(Self(values))
    }

    /// Callers guarantee the values are within bounds (variation operators clip).
    pub(crate) fn new_unchecked(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for DecisionVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// An evaluated decision vector.
///
/// `penalized_f` is what every algorithm ranks on; it equals `f` for feasible
/// solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
    pub violations: Vec<f64>,
    pub penalized_f: ObjectiveVector,
}

impl Solution {
    /// Unconstrained solution: no violations, `penalized_f == f`.
    pub fn unconstrained(x: DecisionVector, f: ObjectiveVector) -> Self {
        Self {
            x,
            penalized_f: f.clone(),
            f,
            violations: Vec::new(),
        }
    }

    /// A bare objective point, used where only the objective values matter
    /// (archive experiments on sampled fronts, tests).
    pub fn from_objectives(f: ObjectiveVector) -> Self {
        Self::unconstrained(DecisionVector(Vec::new()), f)
    }

    pub fn is_feasible(&self) -> bool {
        self.violations.iter().all(|&v| v == 0.0)
    }

    pub fn total_violation(&self) -> f64 {
        self.violations.iter().sum()
    }

    /// Objective values the search operates on.
    pub fn fitness(&self) -> &[f64] {
        &self.penalized_f
    }
}

impl AsRef<[f64]> for Solution {
    fn as_ref(&self) -> &[f64] {
        self.fitness()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Optimization direction per objective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectiveSense(Vec<Sense>);

impl ObjectiveSense {
    pub fn new(senses: Vec<Sense>) -> Self {
        Self(senses)
    }

    pub fn minimize(m: usize) -> Self {
        Self(alloc::vec![Sense::Minimize; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sense {
        self.0[i]
    }
}

fn check_same_length<P: AsRef<[f64]>>(set: &[P]) -> Result<usize> {
    let first = set.first().ok_or(Error::EmptySet)?.as_ref().len();
    for p in set {
        if p.as_ref().len() != first {
            return Err(Error::DimensionMismatch {
                expected: first,
                found: p.as_ref().len(),
            });
        }
    }
    Ok(first)
}

/// Componentwise minimum of a nonempty set.
pub fn ideal_point<P: AsRef<[f64]>>(set: &[P]) -> Result<Vec<f64>> {
    let m = check_same_length(set)?;
    let mut ideal = alloc::vec![f64::INFINITY; m];
    for p in set {
        for (best, &v) in ideal.iter_mut().zip(p.as_ref()) {
            *best = best.min(v);
        }
    }
    Ok(ideal)
}

/// Componentwise maximum of a nonempty set.
pub fn nadir_point<P: AsRef<[f64]>>(set: &[P]) -> Result<Vec<f64>> {
    let m = check_same_length(set)?;
    let mut nadir = alloc::vec![f64::NEG_INFINITY; m];
    for p in set {
        for (worst, &v) in nadir.iter_mut().zip(p.as_ref()) {
            *worst = worst.max(v);
        }
    }
    Ok(nadir)
}

/// Hypervolume reference point built from the upper boundary of a front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePoint {
    pub point: Vec<f64>,
    /// Components whose maximum was ≤ 0 and whose range over the front was
    /// zero, so no offset could be applied.
    pub degenerate: Vec<usize>,
}

impl ReferencePoint {
    pub fn is_degenerate(&self) -> bool {
        !self.degenerate.is_empty()
    }
}

/// Reference point `factor` beyond the upper boundary of `front`.
///
/// Positive maxima are scaled by `1 + factor`. A maximum ≤ 0 is shifted by
/// `factor` times the component's range over the front instead; a zero range
/// leaves it in place and flags it as degenerate.
pub fn reference_point<P: AsRef<[f64]>>(front: &[P], factor: f64) -> Result<ReferencePoint> {
    if !(factor >= 0.0) {
        return Err(Error::InvalidArgument("reference point factor must be >= 0".into()));
    }
    let upper = nadir_point(front)?;
    let lower = ideal_point(front)?;
    let mut degenerate = Vec::new();
    let point = upper
        .iter()
        .zip(&lower)
        .enumerate()
        .map(|(i, (&hi, &lo))| {
            if hi > 0.0 {
                hi * (1.0 + factor)
            } else {
                let range = hi - lo;
                if range == 0.0 {
                    degenerate.push(i);
                }
                hi + factor * range.abs()
            }
        })
        .collect();
    Ok(ReferencePoint { point, degenerate })
}
