use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Crowding distance of every member of `front`.
///
/// Boundary members of each objective get `+∞`; interior members add
/// `(next − previous) / (max − min)` per objective, and an objective with zero
/// range adds nothing.
pub fn crowding_distance<S: AsRef<[f64]>>(front: &[S]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for obj in 0..m {
        let value = |i: usize| front[i].as_ref()[obj];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (lo, hi) = (value(order[0]), value(order[n - 1]));
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            distance[w[1]] += (value(w[2]) - value(w[0])) / range;
        }
    }
    distance
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// Distances computed once; the smallest are dropped in one pass.
    Once,
    /// One removal at a time with distances recomputed in between.
    Iterative,
}

/// Indices (ascending) of the `k` members of `front` that survive crowding
/// truncation. Ties on distance remove the lowest index first.
pub fn crowding_truncate<S: AsRef<[f64]>>(front: &[S], k: usize, mode: TruncationMode) -> Result<Vec<usize>> {
    let n = front.len();
    if k > n {
        return Err(Error::TruncationTooLarge { keep: k, len: n });
    }
    let by_crowding = |alive: &[usize], d: &[f64]| -> Vec<usize> {
        let mut order: Vec<usize> = (0..alive.len()).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(alive[a].cmp(&alive[b])));
        order
    };
    let mut alive: Vec<usize> = (0..n).collect();
    match mode {
        TruncationMode::Once => {
            let d = crowding_distance(front);
            let order = by_crowding(&alive, &d);
            let mut keep = vec![true; n];
            for &i in &order[..n - k] {
                keep[i] = false;
            }
            alive.retain(|&i| keep[i]);
        }
        TruncationMode::Iterative => {
            while alive.len() > k {
                let members: Vec<&[f64]> = alive.iter().map(|&i| front[i].as_ref()).collect();
                let d = crowding_distance(&members);
                let worst = by_crowding(&alive, &d)[0];
                alive.remove(worst);
            }
        }
    }
    Ok(alive)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(crowding_distance(&[[0.0, 1.0], [1.0, 0.0]]), vec![f64::INFINITY; 2]);
        let d = crowding_distance(&[[0.0, 1.0], [0.4, 0.6], [1.0, 0.0]]);
        assert_eq!(d[1], 2.0);
        let flat = crowding_distance(&[[0.0, 5.0], [0.5, 5.0], [1.0, 5.0]]);
        assert_eq!(flat[1], 1.0);
    }

    #[test]
    fn truncate_examples() {
        let line = [[0.0, 1.0], [0.25, 0.75], [0.5, 0.5], [0.75, 0.25], [1.0, 0.0]];
        assert_eq!(crowding_truncate(&line, 5, TruncationMode::Once).unwrap(), vec![0, 1, 2, 3, 4]);
        let once = crowding_truncate(&line, 4, TruncationMode::Once).unwrap();
        let iter = crowding_truncate(&line, 4, TruncationMode::Iterative).unwrap();
        assert_eq!(once, iter);
        assert!(matches!(
            crowding_truncate(&line, 6, TruncationMode::Once),
            Err(Error::TruncationTooLarge { keep: 6, len: 5 })
        ));

        let cluster = [[0.0, 1.0], [0.01, 0.99], [0.02, 0.98], [1.0, 0.0]];
        let kept = crowding_truncate(&cluster, 3, TruncationMode::Iterative).unwrap();
        assert_eq!(kept.len(), 3);
        assert!(kept.contains(&0) && kept.contains(&3));
    }
}
