//! Quality indicators: convergence γ, diversity Δ, hypervolume and coverage
//! of many sets.

use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use crate::algorithms::euclidean;
use crate::dominance::covers;
use crate::{Error, Result};

/// Metric values of one front.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub gamma: f64,
    pub delta: f64,
    pub hv: Option<f64>,
    pub cs: Option<f64>,
    pub cardinality: usize,
}

fn common_dimension<P: AsRef<[f64]>>(sets: &[&[P]]) -> Result<usize> {
    let mut m = None;
    for set in sets {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in set.iter() {
            let len = p.as_ref().len();
            match m {
                None => m = Some(len),
                Some(expected) if expected != len => {
                    return Err(Error::DimensionMismatch { expected, found: len })
                }
                _ => {}
            }
        }
    }
    m.ok_or(Error::EmptySet)
}

fn nearest<P: AsRef<[f64]>>(p: &[f64], set: &[P]) -> f64 {
    set.iter()
        .map(|q| euclidean(p, q.as_ref()))
        .fold(f64::INFINITY, f64::min)
}

/// Mean Euclidean distance from each member of `h` to its nearest member of
/// `reference`.
pub fn convergence_gamma<P: AsRef<[f64]>, Q: AsRef<[f64]>>(h: &[P], reference: &[Q]) -> Result<f64> {
    let m = common_dimension(&[h])?;
    let mr = common_dimension(&[reference])?;
    if m != mr {
        return Err(Error::DimensionMismatch { expected: mr, found: m });
    }
    let total: f64 = h.iter().map(|p| nearest(p.as_ref(), reference)).sum();
    Ok(total / h.len() as f64)
}

fn extreme<P: AsRef<[f64]>>(set: &[P], obj: usize) -> &[f64] {
    set.iter()
        .map(AsRef::as_ref)
        .max_by(|a, b| a[obj].total_cmp(&b[obj]))
        .expect("nonempty set")
}

/// Spread of `h` relative to `reference`:
/// `(Σ d_e + Σ |d_h − d̄|) / (Σ d_e + |H|·d̄)`.
///
/// `d_e` is the distance between the members of `h` and `reference` with the
/// largest value of each objective; `d_h` is the nearest-neighbour distance of
/// each member of `h` within `h`.
pub fn diversity_delta<P: AsRef<[f64]>, Q: AsRef<[f64]>>(h: &[P], reference: &[Q]) -> Result<f64> {
    if h.len() < 2 {
        return Err(Error::InvalidArgument("diversity needs at least two points".into()));
    }
    let m = common_dimension(&[h])?;
    let mr = common_dimension(&[reference])?;
    if m != mr {
        return Err(Error::DimensionMismatch { expected: mr, found: m });
    }
    let extremes: f64 = (0..m)
        .map(|i| euclidean(extreme(h, i), extreme(reference, i)))
        .sum();
    let nn: Vec<f64> = (0..h.len())
        .map(|i| {
            (0..h.len())
                .filter(|&j| j != i)
                .map(|j| euclidean(h[i].as_ref(), h[j].as_ref()))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = nn.iter().sum::<f64>() / nn.len() as f64;
    let spread: f64 = nn.iter().map(|d| (d - mean).abs()).sum();
    let denominator = extremes + h.len() as f64 * mean;
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok((extremes + spread) / denominator)
}

/// Exact hypervolume dominated by `h` and bounded by `reference` (m = 2 or 3).
///
/// Members that do not strictly dominate `reference` contribute nothing and
/// are reported through `log::warn!`.
pub fn hypervolume<P: AsRef<[f64]>>(h: &[P], reference: &[f64]) -> Result<f64> {
    let m = reference.len();
    if !(2..=3).contains(&m) {
        return Err(Error::UnsupportedObjectiveCount(m));
    }
    let mut inside: Vec<&[f64]> = Vec::with_capacity(h.len());
    let mut clipped = 0;
    for p in h {
        let p = p.as_ref();
        if p.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: p.len() });
        }
        if p.iter().zip(reference).all(|(a, r)| a < r) {
            inside.push(p);
        } else {
            clipped += 1;
        }
    }
    if clipped > 0 {
        log::warn!("hypervolume: {clipped} point(s) do not dominate the reference point and were ignored");
    }
    Ok(if m == 2 {
        hv2(inside.iter().map(|p| [p[0], p[1]]).collect(), [reference[0], reference[1]])
    } else {
        hv3(inside, reference)
    })
}

fn hv2(mut pts: Vec<[f64; 2]>, r: [f64; 2]) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut stairs: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for p in pts {
        if stairs.last().is_none_or(|q| p[1] < q[1]) {
            stairs.push(p);
        }
    }
    let mut area = 0.0;
    for (i, p) in stairs.iter().enumerate() {
        let right = stairs.get(i + 1).map_or(r[0], |q| q[0]);
        area += (right - p[0]) * (r[1] - p[1]);
    }
    area
}

fn hv3(mut pts: Vec<&[f64]>, r: &[f64]) -> f64 {
    pts.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slab: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    let mut i = 0;
    while i < pts.len() {
        let z = pts[i][2];
        while i < pts.len() && pts[i][2] == z {
            slab.push([pts[i][0], pts[i][1]]);
            i += 1;
        }
        let top = if i < pts.len() { pts[i][2] } else { r[2] };
        volume += hv2(slab.clone(), [r[0], r[1]]) * (top - z);
    }
    volume
}

/// Coverage of many sets: for each front, the fraction of the multiset union
/// of all other fronts that it covers (dominates or equals).
pub fn coverage_many_sets<P: AsRef<[f64]>>(fronts: &[&[P]]) -> Result<Vec<f64>> {
    if fronts.len() < 2 {
        return Err(Error::InvalidArgument("coverage needs at least two fronts".into()));
    }
    common_dimension(fronts)?;
    Ok((0..fronts.len())
        .map(|i| {
            let mut covered = 0usize;
            let mut total = 0usize;
            for (j, other) in fronts.iter().enumerate() {
                if j == i {
                    continue;
                }
                for b in other.iter() {
                    total += 1;
                    if fronts[i].iter().any(|a| covers(a.as_ref(), b.as_ref())) {
                        covered += 1;
                    }
                }
            }
            covered as f64 / total as f64
        })
        .collect())
}

/// Sorts rows lexicographically; handy for comparing fronts as sets.
pub fn sort_points(points: &mut [Vec<f64>]) {
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    });
}
