//! Benchmark problems: Deb52, Pol, ZDT1–4/6 and DTLZ1–9.
//!
//! DTLZ8 and DTLZ9 carry inequality constraints. They are stored in the
//! `g(x) ≤ 0` convention, so a table constraint `c(x) ≥ 0` becomes `-c(x) ≤ 0`
//! and its violation is `max(0, -c(x))`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)]
use num_traits::Float;

use crate::objective::{Bounds, DecisionVector, ObjectiveVector, Solution};
use crate::{Error, Result};

mod fronts;

pub use fronts::{
    approximate_reference_front, deb52_f1_min, nondominated_filter, sample_reference_front,
    simplex_lattice, zdt6_f1_min, FrontSource, ReferenceFront,
};

/// Weight applied to the total constraint violation.
pub const PENALTY_WEIGHT: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    Deb52,
    Pol,
    Zdt1,
    Zdt2,
    Zdt3,
    Zdt4,
    Zdt6,
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Dtlz5,
    Dtlz6,
    Dtlz7,
    Dtlz8,
    Dtlz9,
}

impl ProblemId {
    pub const ALL: [ProblemId; 16] = [
        ProblemId::Deb52,
        ProblemId::Pol,
        ProblemId::Zdt1,
        ProblemId::Zdt2,
        ProblemId::Zdt3,
        ProblemId::Zdt4,
        ProblemId::Zdt6,
        ProblemId::Dtlz1,
        ProblemId::Dtlz2,
        ProblemId::Dtlz3,
        ProblemId::Dtlz4,
        ProblemId::Dtlz5,
        ProblemId::Dtlz6,
        ProblemId::Dtlz7,
        ProblemId::Dtlz8,
        ProblemId::Dtlz9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Deb52 => "DEB52",
            ProblemId::Pol => "POL",
            ProblemId::Zdt1 => "ZDT1",
            ProblemId::Zdt2 => "ZDT2",
            ProblemId::Zdt3 => "ZDT3",
            ProblemId::Zdt4 => "ZDT4",
            ProblemId::Zdt6 => "ZDT6",
            ProblemId::Dtlz1 => "DTLZ1",
            ProblemId::Dtlz2 => "DTLZ2",
            ProblemId::Dtlz3 => "DTLZ3",
            ProblemId::Dtlz4 => "DTLZ4",
            ProblemId::Dtlz5 => "DTLZ5",
            ProblemId::Dtlz6 => "DTLZ6",
            ProblemId::Dtlz7 => "DTLZ7",
            ProblemId::Dtlz8 => "DTLZ8",
            ProblemId::Dtlz9 => "DTLZ9",
        }
    }

    /// Default evaluation budget.
    pub fn default_budget(self) -> usize {
        match self {
            ProblemId::Zdt4 | ProblemId::Dtlz8 => 100_000,
            ProblemId::Dtlz9 => 50_000,
            ProblemId::Dtlz3 | ProblemId::Dtlz4 => 30_000,
            _ => 20_000,
        }
    }

    /// Whether hypervolume is meaningful for this problem.
    pub fn supports_hypervolume(self) -> bool {
        !matches!(self, ProblemId::Dtlz8 | ProblemId::Dtlz9)
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        ProblemId::ALL
            .into_iter()
            .find(|id| id.name() == upper)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown problem '{s}'")))
    }
}

/// A benchmark problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    id: ProblemId,
    m: usize,
    bounds: Bounds,
    n_constraints: usize,
    budget: usize,
}

impl Problem {
    /// The problem with its standard dimensions (three objectives for DTLZ).
    pub fn new(id: ProblemId) -> Self {
        let m = match id {
            ProblemId::Deb52 | ProblemId::Pol => 2,
            ProblemId::Zdt1 | ProblemId::Zdt2 | ProblemId::Zdt3 | ProblemId::Zdt4 | ProblemId::Zdt6 => 2,
            _ => 3,
        };
        Self::with_objectives(id, m).expect("standard dimensions are valid")
    }

    /// DTLZ2 with `m` objectives and `m + 9` variables. Other problems only
    /// accept their standard objective count.
    pub fn with_objectives(id: ProblemId, m: usize) -> Result<Self> {
        let standard = match id {
            ProblemId::Deb52 | ProblemId::Pol => 2,
            ProblemId::Zdt1 | ProblemId::Zdt2 | ProblemId::Zdt3 | ProblemId::Zdt4 | ProblemId::Zdt6 => 2,
            _ => 3,
        };
        if m != standard && !(id == ProblemId::Dtlz2 && m >= 2) {
            return Err(Error::UnsupportedObjectiveCount(m));
        }
        let bounds = match id {
            ProblemId::Deb52 => Bounds::uniform(2, 0.0, 1.0)?,
            ProblemId::Pol => Bounds::uniform(2, -PI, PI)?,
            ProblemId::Zdt1 | ProblemId::Zdt2 | ProblemId::Zdt3 => Bounds::uniform(30, 0.0, 1.0)?,
            ProblemId::Zdt4 => {
                let mut lower = vec![-5.0; 10];
                let mut upper = vec![5.0; 10];
                lower[0] = 0.0;
                upper[0] = 1.0;
                Bounds::new(lower, upper)?
            }
            ProblemId::Zdt6 => Bounds::uniform(10, 0.0, 1.0)?,
            ProblemId::Dtlz1 => Bounds::uniform(7, 0.0, 1.0)?,
            ProblemId::Dtlz2 => Bounds::uniform(m + 9, 0.0, 1.0)?,
            ProblemId::Dtlz3 | ProblemId::Dtlz4 | ProblemId::Dtlz5 | ProblemId::Dtlz6 => {
                Bounds::uniform(12, 0.0, 1.0)?
            }
            ProblemId::Dtlz7 => Bounds::uniform(22, 0.0, 1.0)?,
            ProblemId::Dtlz8 | ProblemId::Dtlz9 => Bounds::uniform(30, 0.0, 1.0)?,
        };
        let n_constraints = match id {
            ProblemId::Dtlz8 => 3,
            ProblemId::Dtlz9 => 2,
            _ => 0,
        };
        Ok(Self {
            id,
            m,
            bounds,
            n_constraints,
            budget: id.default_budget(),
        })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    /// Objective count.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Variable count.
    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn n_constraints(&self) -> usize {
        self.n_constraints
    }

    pub fn default_budget(&self) -> usize {
        self.budget
    }

    /// Display name; DTLZ2 with a non-standard objective count gets an `_M` suffix.
    pub fn label(&self) -> String {
        if self.id == ProblemId::Dtlz2 && self.m != 3 {
            alloc::format!("DTLZ2_{}", self.m)
        } else {
            String::from(self.id.name())
        }
    }

    /// Evaluates `x` after checking its length and bounds.
    pub fn evaluate(&self, x: &DecisionVector) -> Result<Solution> {
        let x = DecisionVector::new(x.to_vec(), &self.bounds)?;
        Ok(self.evaluate_unchecked(x))
    }

    /// Evaluates a vector already known to be well formed.
    pub(crate) fn evaluate_unchecked(&self, x: DecisionVector) -> Solution {
        let (f, constraints) = self.raw_objectives(&x);
        let violations: Vec<f64> = constraints.iter().map(|&g| g.max(0.0)).collect();
        let penalized = penalize(&f, &violations);
        Solution {
            x,
            f: ObjectiveVector::new(f).expect("problem objectives are finite"),
            violations,
            penalized_f: ObjectiveVector::new(penalized).expect("penalized objectives are finite"),
        }
    }

    /// Objective values and constraint values in `g(x) ≤ 0` form.
    fn raw_objectives(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        match self.id {
            ProblemId::Deb52 => (deb52(x), Vec::new()),
            ProblemId::Pol => (pol(x), Vec::new()),
            ProblemId::Zdt1 => (zdt(x, zdt_linear_g(x), |f1, g| 1.0 - (f1 / g).sqrt()), Vec::new()),
            ProblemId::Zdt2 => (zdt(x, zdt_linear_g(x), |f1, g| 1.0 - (f1 / g).powi(2)), Vec::new()),
            ProblemId::Zdt3 => (
                zdt(x, zdt_linear_g(x), |f1, g| {
                    let h = f1 / g;
                    1.0 - h.sqrt() - h * (10.0 * PI * f1).sin()
                }),
                Vec::new(),
            ),
            ProblemId::Zdt4 => (zdt(x, zdt4_g(x), |f1, g| 1.0 - (f1 / g).sqrt()), Vec::new()),
            ProblemId::Zdt6 => (zdt6(x), Vec::new()),
            ProblemId::Dtlz1 => (dtlz1(x, self.m), Vec::new()),
            ProblemId::Dtlz2 => (dtlz_sphere(x, self.m, 1.0, sphere_g(&x[self.m - 1..])), Vec::new()),
            ProblemId::Dtlz3 => (dtlz_sphere(x, self.m, 1.0, rastrigin_g(&x[self.m - 1..])), Vec::new()),
            ProblemId::Dtlz4 => (dtlz_sphere(x, self.m, 100.0, sphere_g(&x[self.m - 1..])), Vec::new()),
            ProblemId::Dtlz5 => (dtlz_curve(x, sphere_g(&x[2..])), Vec::new()),
            ProblemId::Dtlz6 => (dtlz_curve(x, x[2..].iter().map(|v| v.powf(0.1)).sum()), Vec::new()),
            ProblemId::Dtlz7 => (dtlz7(x), Vec::new()),
            ProblemId::Dtlz8 => dtlz8(x),
            ProblemId::Dtlz9 => dtlz9(x),
        }
    }
}

/// Adds `PENALTY_WEIGHT` times the total violation to every objective.
pub fn penalize(f: &[f64], violations: &[f64]) -> Vec<f64> {
    let total: f64 = violations.iter().sum();
    f.iter().map(|&v| v + PENALTY_WEIGHT * total).collect()
}

pub fn evaluate(problem: &Problem, x: &DecisionVector) -> Result<Solution> {
    problem.evaluate(x)
}

/// Deb52 objective `f1` as a function of `x1`.
pub fn deb52_f1(x1: f64) -> f64 {
    1.0 - (-4.0 * x1).exp() * (10.0 * PI * x1).sin().powi(4)
}

/// ZDT6 objective `f1` as a function of `x1`.
pub fn zdt6_f1(x1: f64) -> f64 {
    1.0 - (-4.0 * x1).exp() * (6.0 * PI * x1).sin().powi(6)
}

fn deb52(x: &[f64]) -> Vec<f64> {
    let f1 = deb52_f1(x[0]);
    let g = 1.0 + x[1] * x[1];
    let h = if f1 <= g { 1.0 - (f1 / g).powi(10) } else { 0.0 };
    vec![f1, g * h]
}

fn pol(x: &[f64]) -> Vec<f64> {
    let (s1, c1, s2, c2) = (1.0f64.sin(), 1.0f64.cos(), 2.0f64.sin(), 2.0f64.cos());
    let a1 = 0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2;
    let a2 = 1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2;
    let (sx1, cx1, sx2, cx2) = (x[0].sin(), x[0].cos(), x[1].sin(), x[1].cos());
    let b1 = 0.5 * sx1 - 2.0 * cx1 + sx2 - 1.5 * cx2;
    let b2 = 1.5 * sx1 - cx1 + 2.0 * sx2 - 0.5 * cx2;
    let f1 = 1.0 + (a1 - b1).powi(2) + (a2 - b2).powi(2);
    let f2 = (x[0] + 3.0).powi(2) + (x[1] + 1.0).powi(2);
    vec![f1, f2]
}

fn zdt_linear_g(x: &[f64]) -> f64 {
    1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64
}

fn zdt4_g(x: &[f64]) -> f64 {
    1.0 + 10.0 * (x.len() - 1) as f64
        + x[1..]
            .iter()
            .map(|&v| v * v - 10.0 * (4.0 * PI * v).cos())
            .sum::<f64>()
}

fn zdt(x: &[f64], g: f64, h: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let f1 = x[0];
    vec![f1, g * h(f1, g)]
}

fn zdt6(x: &[f64]) -> Vec<f64> {
    let f1 = zdt6_f1(x[0]);
    let g = 1.0 + 9.0 * (x[1..].iter().sum::<f64>() / (x.len() - 1) as f64).powf(0.25);
    vec![f1, g * (1.0 - (f1 / g).powi(2))]
}

fn sphere_g(xm: &[f64]) -> f64 {
    xm.iter().map(|&v| (v - 0.5).powi(2)).sum()
}

fn rastrigin_g(xm: &[f64]) -> f64 {
    let sum: f64 = xm
        .iter()
        .map(|&v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
        .sum();
    100.0 * (xm.len() as f64 + sum)
}

fn dtlz1(x: &[f64], m: usize) -> Vec<f64> {
    let g = rastrigin_g(&x[m - 1..]);
    let scale = 0.5 * (1.0 + g);
    (0..m)
        .map(|j| {
            let mut v = scale;
            for &xi in &x[..m - 1 - j] {
                v *= xi;
            }
            if j > 0 {
                v *= 1.0 - x[m - 1 - j];
            }
            v
        })
        .collect()
}

/// Spherical DTLZ mapping with position variables `x[..m-1]` raised to `alpha`.
fn dtlz_sphere(x: &[f64], m: usize, alpha: f64, g: f64) -> Vec<f64> {
    let angles: Vec<f64> = x[..m - 1].iter().map(|v| v.powf(alpha) * PI / 2.0).collect();
    spherical(&angles, 1.0 + g)
}

/// `radius` times the point on the unit sphere with the given angles, laid out
/// as f1 = Π cos, f_j = Π_{i<m-j} cos · sin(θ_{m-j}), f_m = sin θ_1.
fn spherical(angles: &[f64], radius: f64) -> Vec<f64> {
    let m = angles.len() + 1;
    (0..m)
        .map(|j| {
            let mut v = radius;
            for &a in &angles[..m - 1 - j] {
                v *= a.cos();
            }
            if j > 0 {
                v *= angles[m - 1 - j].sin();
            }
            v
        })
        .collect()
}

fn dtlz_curve(x: &[f64], g: f64) -> Vec<f64> {
    let theta1 = x[0] * PI / 2.0;
    let theta2 = PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[1]);
    spherical(&[theta1, theta2], 1.0 + g)
}

/// DTLZ7 third objective for given `f1`, `f2` and `g`.
pub fn dtlz7_f3(f1: f64, f2: f64, g: f64) -> f64 {
    let h = 3.0
        - [f1, f2]
            .iter()
            .map(|&f| f / (1.0 + g) * (1.0 + (3.0 * PI * f).sin()))
            .sum::<f64>();
    (1.0 + g) * h
}

fn dtlz7(x: &[f64]) -> Vec<f64> {
    let xm = &x[2..];
    let g = 1.0 + 9.0 / xm.len() as f64 * xm.iter().sum::<f64>();
    vec![x[0], x[1], dtlz7_f3(x[0], x[1], g)]
}

fn grouped_sums(x: &[f64], map: impl Fn(f64) -> f64) -> [f64; 3] {
    let mut f = [0.0; 3];
    for (i, chunk) in x.chunks(10).enumerate().take(3) {
        f[i] = chunk.iter().map(|&v| map(v)).sum();
    }
    f
}

fn dtlz8(x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let f = grouped_sums(x, |v| v).map(|s| 0.1 * s);
    let constraints = vec![
        -(f[2] + 4.0 * f[0] - 1.0),
        -(f[2] + 4.0 * f[1] - 1.0),
        -(2.0 * f[2] + f[0] + f[1] - 1.0),
    ];
    (f.to_vec(), constraints)
}

fn dtlz9(x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let f = grouped_sums(x, |v| v.powf(0.1));
    let constraints = vec![-(f[2] * f[2] + f[0] * f[0] - 1.0), -(f[2] * f[2] + f[1] * f[1] - 1.0)];
    (f.to_vec(), constraints)
}
