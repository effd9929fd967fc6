use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::euclidean;
use crate::dominance::dominates;
use crate::{Error, Result};

/// SPEA2 fitness `R(i) + D(i)` of every member of `union`.
///
/// `R(i)` sums the strengths (number of members dominated) of everything
/// dominating `i`; `D(i) = 1 / (σ_k + 2)` with σ_k the distance to the k-th
/// nearest neighbour, `k = ⌊√|union|⌋`. Nondominated members score below 1.
pub fn spea2_fitness<S: AsRef<[f64]>>(union: &[S]) -> Vec<f64> {
    let n = union.len();
    let mut strength = vec![0usize; n];
    let mut dominators: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates(union[i].as_ref(), union[j].as_ref()) {
                strength[i] += 1;
                dominators[j].push(i);
            }
        }
    }
    let k = (n as f64).sqrt().floor() as usize;
    let mut row = Vec::with_capacity(n);
    (0..n)
        .map(|i| {
            let raw: usize = dominators[i].iter().map(|&j| strength[j]).sum();
            row.clear();
            row.extend(
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| euclidean(union[i].as_ref(), union[j].as_ref())),
            );
            let sigma = if row.is_empty() {
                0.0
            } else {
                let kth = k.clamp(1, row.len()) - 1;
                *row.select_nth_unstable_by(kth, |a, b| a.total_cmp(b)).1
            };
            raw as f64 + 1.0 / (sigma + 2.0)
        })
        .collect()
}

/// Indices (ascending) of the `k` members kept by SPEA2 archive truncation.
///
/// Repeatedly removes the member whose sorted list of distances to the other
/// remaining members is lexicographically smallest; a full tie removes the
/// lowest index.
pub fn spea2_truncate<S: AsRef<[f64]>>(archive: &[S], k: usize) -> Result<Vec<usize>> {
    let n = archive.len();
    if k > n {
        return Err(Error::TruncationTooLarge { keep: k, len: n });
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean(archive[i].as_ref(), archive[j].as_ref());
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    // neighbours[i]: other live members sorted by (distance, index)
    let mut neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut row: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            row.sort_by(|&a, &b| dist[i * n + a].total_cmp(&dist[i * n + b]).then(a.cmp(&b)));
            row
        })
        .collect();
    let mut alive = vec![true; n];
    for _ in k..n {
        let mut victim = usize::MAX;
        for i in (0..n).filter(|&i| alive[i]) {
            if victim == usize::MAX || closer(&neighbours, &dist, n, i, victim) {
                victim = i;
            }
        }
        alive[victim] = false;
        neighbours[victim].clear();
        for i in (0..n).filter(|&i| alive[i]) {
            let row = &mut neighbours[i];
            if let Some(pos) = row.iter().position(|&j| j == victim) {
                row.remove(pos);
            }
        }
    }
    Ok((0..n).filter(|&i| alive[i]).collect())
}

/// Whether `a`'s distance list is lexicographically smaller than `b`'s.
fn closer(neighbours: &[Vec<usize>], dist: &[f64], n: usize, a: usize, b: usize) -> bool {
    for (&x, &y) in neighbours[a].iter().zip(&neighbours[b]) {
        let (da, db) = (dist[a * n + x], dist[b * n + y]);
        if da < db {
            return true;
        }
        if da > db {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fitness_examples() {
        let nd = [[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]];
        assert!(spea2_fitness(&nd).iter().all(|&f| f < 1.0));

        let chain = [[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]];
        let f = spea2_fitness(&chain);
        let raw: Vec<f64> = f.iter().map(|v| v.floor()).collect();
        assert_eq!(raw, vec![0.0, 2.0, 3.0]);

        assert_eq!(spea2_fitness(&[[0.2, 0.3]]), vec![0.5]);
    }

    #[test]
    fn truncate_examples() {
        let three = [[0.0, 1.0], [0.01, 0.99], [1.0, 0.0]];
        assert_eq!(spea2_truncate(&three, 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(spea2_truncate(&three, 2).unwrap(), vec![0, 2]);
        assert!(spea2_truncate(&three, 4).is_err());

        let four = [[0.0, 1.0], [1.0 / 3.0, 2.0 / 3.0], [2.0 / 3.0, 1.0 / 3.0], [1.0, 0.0]];
        let kept = spea2_truncate(&four, 3).unwrap();
        assert!(kept.contains(&0) && kept.contains(&3));
    }
}
