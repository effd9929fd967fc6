//! Dominance relations, the cone-dominance matrix, box indexing and the
//! ε sizing rules.
//!
//! Every relation assumes minimization and compares objective vectors with
//! exact floating-point equality.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

#[allow(unused_imports)]
use num_traits::Float;

use crate::objective::{ObjectiveSense, Sense};
use crate::{Error, Result};

/// Absolute tolerance below zero that still counts as a nonnegative cone
/// coefficient λ.
pub const LAMBDA_TOLERANCE: f64 = 1e-9;

/// Cone opening used by every experiment unless configured otherwise.
pub const DEFAULT_KAPPA: f64 = 0.5;

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// `a ≤ b` componentwise and `a ≠ b`. Lengths must already match.
#[inline]
pub(crate) fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// `a` dominates or equals `b` (the "covers" relation).
#[inline]
pub(crate) fn covers(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[inline]
pub(crate) fn eps_dominates_unchecked(a: &[f64], b: &[f64], eps: &[f64]) -> bool {
    a.iter().zip(b).zip(eps).all(|((&x, &y), &e)| x - e <= y)
}

/// Pareto dominance: `a ≤ b` componentwise with `a ≠ b`.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_lengths(a, b)?;
    Ok(dominates(a, b))
}

/// Additive ε-dominance: `a_i − ε_i ≤ b_i` for every objective.
pub fn eps_dominates(a: &[f64], b: &[f64], eps: &EpsilonVector) -> Result<bool> {
    check_lengths(a, b)?;
    check_lengths(a, eps)?;
    Ok(eps_dominates_unchecked(a, b, eps))
}

/// Per-objective box sizes, all strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonVector(Vec<f64>);

impl EpsilonVector {
    pub fn new(eps: Vec<f64>) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::EmptySet);
        }
        for (index, &value) in eps.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidEpsilon { index, value });
            }
        }
        Ok(Self(eps))
    }

    /// The same ε for all `m` objectives.
    pub fn uniform(eps: f64, m: usize) -> Result<Self> {
        Self::new(vec![eps; m])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for EpsilonVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// The cone-dominance matrix Ψ(ε, κ) together with its LU factorization.
///
/// Row `i` holds `ε_i` on the diagonal and `κ·ε_i` elsewhere, so column `j`
/// is the `j`-th generator of the dominance cone.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeMatrix {
    kappa: f64,
    eps: EpsilonVector,
    psi: Vec<f64>,
    lu: Vec<f64>,
    pivots: Vec<usize>,
}

impl ConeMatrix {
    pub fn new(eps: EpsilonVector, kappa: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&kappa) {
            return Err(Error::KappaOutOfRange(kappa));
        }
        let m = eps.len();
        if m < 2 {
            return Err(Error::TooFewObjectives { required: 2, found: m });
        }
        let mut psi = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                psi[i * m + j] = if i == j { eps[i] } else { kappa * eps[i] };
            }
        }
        let (lu, pivots) = lu_decompose(&psi, m);
        Ok(Self {
            kappa,
            eps,
            psi,
            lu,
            pivots,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn eps(&self) -> &EpsilonVector {
        &self.eps
    }

    pub fn dim(&self) -> usize {
        self.eps.len()
    }

    /// Entry `(row, col)` of Ψ.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.psi[row * self.dim() + col]
    }

    /// Row-major copy of Ψ.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.psi.chunks(self.dim()).map(<[f64]>::to_vec).collect()
    }

    /// Solves `Ψ λ = z` in place using the cached factorization.
    pub fn solve_in_place(&self, z: &mut [f64]) {
        let m = self.dim();
        debug_assert_eq!(z.len(), m);
        for (i, &p) in self.pivots.iter().enumerate() {
            z.swap(i, p);
        }
        for i in 0..m {
            let mut acc = z[i];
            for j in 0..i {
                acc -= self.lu[i * m + j] * z[j];
            }
            z[i] = acc;
        }
        for i in (0..m).rev() {
            let mut acc = z[i];
            for j in i + 1..m {
                acc -= self.lu[i * m + j] * z[j];
            }
            z[i] = acc / self.lu[i * m + i];
        }
    }

    pub fn solve(&self, z: &[f64]) -> Vec<f64> {
        let mut out = z.to_vec();
        self.solve_in_place(&mut out);
        out
    }

    /// Cone coefficients λ of `b` relative to the shifted anchor `a − ε`.
    pub fn lambda(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut z: Vec<f64> = a
            .iter()
            .zip(b)
            .zip(self.eps.iter())
            .map(|((&ai, &bi), &e)| bi - (ai - e))
            .collect();
        self.solve_in_place(&mut z);
        z
    }

    /// Cone ε-dominance without length checks.
    #[inline]
    pub(crate) fn dominates_unchecked(&self, a: &[f64], b: &[f64]) -> bool {
        if dominates(a, b) {
            return true;
        }
        // m is small (2..=4 in practice); stay off the heap.
        let m = self.dim();
        if m <= 8 {
            let mut z = [0.0; 8];
            for i in 0..m {
                z[i] = b[i] - (a[i] - self.eps[i]);
            }
            self.solve_in_place(&mut z[..m]);
            z[..m].iter().all(|&l| l >= -LAMBDA_TOLERANCE)
        } else {
            self.lambda(a, b).iter().all(|&l| l >= -LAMBDA_TOLERANCE)
        }
    }
}

/// Doolittle LU with partial pivoting on a row-major `m × m` matrix.
/// `pivots[k]` is the row swapped with row `k` at step `k`.
fn lu_decompose(a: &[f64], m: usize) -> (Vec<f64>, Vec<usize>) {
    let mut lu = a.to_vec();
    let mut pivots = Vec::with_capacity(m);
    for k in 0..m {
        let p = (k..m)
            .max_by(|&r, &s| lu[r * m + k].abs().total_cmp(&lu[s * m + k].abs()))
            .unwrap_or(k);
        if p != k {
            for j in 0..m {
                lu.swap(k * m + j, p * m + j);
            }
        }
        pivots.push(p);
        let pivot = lu[k * m + k];
        for i in k + 1..m {
            let factor = lu[i * m + k] / pivot;
            lu[i * m + k] = factor;
            for j in k + 1..m {
                lu[i * m + j] -= factor * lu[k * m + j];
            }
        }
    }
    (lu, pivots)
}

/// Builds Ψ(ε, κ) and factorizes it once.
pub fn build_cone_matrix(eps: EpsilonVector, kappa: f64) -> Result<ConeMatrix> {
    ConeMatrix::new(eps, kappa)
}

/// `a` cone ε-dominates `b` when it Pareto-dominates `b`, or when
/// `b − (a − ε)` lies in the cone spanned by the columns of Ψ.
pub fn cone_eps_dominates(a: &[f64], b: &[f64], cone: &ConeMatrix) -> Result<bool> {
    check_lengths(a, b)?;
    if a.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            found: a.len(),
        });
    }
    Ok(cone.dominates_unchecked(a, b))
}

/// Grid corner of the box that holds a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxIndex(pub Vec<f64>);

impl Deref for BoxIndex {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Integer lattice coordinates of the box holding `y`: `⌊y_i/ε_i⌋` for
/// minimized objectives and `⌈y_i/ε_i⌉` for maximized ones.
///
/// The quotient is corrected against the rounded product `k·ε_i`, so a box
/// corner always maps back to its own box.
pub fn box_lattice(y: &[f64], eps: &[f64], sense: &ObjectiveSense) -> Vec<i64> {
    y.iter()
        .zip(eps)
        .enumerate()
        .map(|(i, (&v, &e))| {
            let q = v / e;
            let cell = match sense.get(i) {
                Sense::Minimize => {
                    let k = q.floor();
                    if k * e > v {
                        k - 1.0
                    } else if (k + 1.0) * e <= v {
                        k + 1.0
                    } else {
                        k
                    }
                }
                Sense::Maximize => {
                    let k = q.ceil();
                    if k * e < v {
                        k + 1.0
                    } else if (k - 1.0) * e >= v {
                        k - 1.0
                    } else {
                        k
                    }
                }
            };
            cell as i64
        })
        .collect()
}

/// Box index `b_i = ε_i·⌊y_i/ε_i⌋` (minimized) or `ε_i·⌈y_i/ε_i⌉` (maximized).
pub fn box_index(y: &[f64], eps: &EpsilonVector, sense: &ObjectiveSense) -> BoxIndex {
    BoxIndex(
        box_lattice(y, eps, sense)
            .into_iter()
            .zip(eps.iter())
            .map(|(k, &e)| k as f64 * e)
            .collect(),
    )
}

/// Euclidean distance from `y` to the corner of its box.
pub fn box_origin_distance(y: &[f64], eps: &EpsilonVector, sense: &ObjectiveSense) -> f64 {
    let corner = box_index(y, eps, sense);
    y.iter()
        .zip(corner.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn check_sizing_args(target: usize, range: f64, m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::TooFewObjectives { required: 2, found: m });
    }
    if target == 0 {
        return Err(Error::InvalidArgument("target archive size must be >= 1".into()));
    }
    if !(range > 0.0) || !range.is_finite() {
        return Err(Error::InvalidArgument("objective range K - 1 must be > 0".into()));
    }
    Ok(())
}

/// ε giving at most `target` ε-nondominated points over objectives in
/// `[1, k]`: `(k − 1) / target^(1/(m−1))`.
pub fn eps_for_target_size(target: usize, k: f64, m: usize) -> Result<f64> {
    let range = k - 1.0;
    check_sizing_args(target, range, m)?;
    Ok(range / (target as f64).powf(1.0 / (m as f64 - 1.0)))
}

/// ε giving at most `target` cone ε-nondominated points over objectives in
/// `[1, k]`: the positive root of
/// `((T − 1)/m)·ε^(m−1) + (k − 1)^(m−2)·ε − (k − 1)^(m−1) = 0`.
pub fn cone_eps_for_target_size(target: usize, k: f64, m: usize) -> Result<f64> {
    let range = k - 1.0;
    check_sizing_args(target, range, m)?;
    if target < 2 {
        return Err(Error::InvalidArgument("cone sizing needs a target of at least 2".into()));
    }
    let t = target as f64;
    let mf = m as f64;
    let poly = |eps: f64| {
        ((t - 1.0) / mf) * eps.powi(m as i32 - 1) + range.powi(m as i32 - 2) * eps
            - range.powi(m as i32 - 1)
    };
    let (mut lo, mut hi) = (0.0_f64, range);
    let (f_lo, f_hi) = (poly(lo), poly(hi));
    if f_lo.signum() == f_hi.signum() || f_lo == 0.0 {
        return Err(Error::NoSignChange);
    }
    // the polynomial is increasing on (0, K−1]: negative at 0, ≥ 0 at K−1
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if poly(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Upper bound on the size of a grid archive whose objectives span
/// `[1, K_i]`: `m·[Π_{i<m}(K_i−1)/ε_i − Π_{i<m−1}(K_i−1)/ε_i] + 1`.
///
/// `ranges[i]` is `K_i − 1`.
pub fn archive_capacity_bound(eps: &[f64], ranges: &[f64]) -> Result<f64> {
    check_lengths(eps, ranges)?;
    let m = eps.len();
    if m < 2 {
        return Err(Error::TooFewObjectives { required: 2, found: m });
    }
    let cells: Vec<f64> = ranges.iter().zip(eps).map(|(r, e)| r / e).collect();
    let outer: f64 = cells[..m - 1].iter().product();
    let inner: f64 = cells[..m - 2].iter().product();
    Ok(m as f64 * (outer - inner) + 1.0)
}
