use alloc::vec;
use alloc::vec::Vec;

use super::euclidean;
use crate::{Error, Result};

/// Indices (ascending) of `k` representatives chosen by average-linkage
/// agglomerative clustering of `front` in objective space.
///
/// Clusters with the smallest mean pairwise distance merge first (ties: the
/// lowest index pair). Each final cluster is represented by its member
/// closest to the cluster centroid (ties: lowest index).
pub fn cluster_truncate_average_linkage<S: AsRef<[f64]>>(front: &[S], k: usize) -> Result<Vec<usize>> {
    let n = front.len();
    if k > n {
        return Err(Error::TruncationTooLarge { keep: k, len: n });
    }
    if k == n {
        return Ok((0..n).collect());
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean(front[i].as_ref(), front[j].as_ref());
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut active = vec![true; n];
    let mut nearest = vec![(f64::INFINITY, usize::MAX); n];
    let refresh = |i: usize, active: &[bool], dist: &[f64]| -> (f64, usize) {
        let mut best = (f64::INFINITY, usize::MAX);
        for j in (0..n).filter(|&j| j != i && active[j]) {
            if dist[i * n + j] < best.0 {
                best = (dist[i * n + j], j);
            }
        }
        best
    };
    for i in 0..n {
        nearest[i] = refresh(i, &active, &dist);
    }

    for _ in 0..n - k {
        let mut a = usize::MAX;
        for i in (0..n).filter(|&i| active[i]) {
            if a == usize::MAX || nearest[i].0 < nearest[a].0 {
                a = i;
            }
        }
        let b = nearest[a].1;
        let (a, b) = (a.min(b), a.max(b));
        let (na, nb) = (members[a].len() as f64, members[b].len() as f64);
        for l in (0..n).filter(|&l| active[l] && l != a && l != b) {
            let d = (na * dist[a * n + l] + nb * dist[b * n + l]) / (na + nb);
            dist[a * n + l] = d;
            dist[l * n + a] = d;
        }
        active[b] = false;
        let moved = core::mem::take(&mut members[b]);
        members[a].extend(moved);
        for l in (0..n).filter(|&l| active[l]) {
            if l == a || nearest[l].1 == a || nearest[l].1 == b || dist[l * n + a] < nearest[l].0 {
                nearest[l] = refresh(l, &active, &dist);
            }
        }
    }

    let mut reps: Vec<usize> = members
        .iter()
        .zip(&active)
        .filter(|(_, &on)| on)
        .map(|(cluster, _)| representative(front, cluster))
        .collect();
    reps.sort_unstable();
    Ok(reps)
}

fn representative<S: AsRef<[f64]>>(front: &[S], cluster: &[usize]) -> usize {
    let m = front[cluster[0]].as_ref().len();
    let mut centroid = vec![0.0; m];
    for &i in cluster {
        for (c, v) in centroid.iter_mut().zip(front[i].as_ref()) {
            *c += v;
        }
    }
    for c in &mut centroid {
        *c /= cluster.len() as f64;
    }
    let mut best = (f64::INFINITY, usize::MAX);
    for &i in cluster {
        let d = euclidean(front[i].as_ref(), &centroid);
        if d < best.0 || (d == best.0 && i < best.1) {
            best = (d, i);
        }
    }
    best.1
}
