use alloc::vec;
use alloc::vec::Vec;

use crate::dominance::dominates;

/// Fronts of `pop` as index lists: front 0 is nondominated, front k is
/// nondominated once fronts < k are removed. Indices inside a front are
/// ascending.
pub fn fast_nondominated_sort<S: AsRef<[f64]>>(pop: &[S]) -> Vec<Vec<usize>> {
    let n = pop.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (pop[i].as_ref(), pop[j].as_ref());
            if dominates(a, b) {
                dominated_by[i].push(j);
                counts[j] += 1;
            } else if dominates(b, a) {
                dominated_by[j].push(i);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                counts[j] -= 1;
                if counts[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Indices of the Pareto-nondominated members of `pop`, ascending.
pub fn pareto_front_indices<S: AsRef<[f64]>>(pop: &[S]) -> Vec<usize> {
    (0..pop.len())
        .filter(|&i| !pop.iter().any(|q| dominates(q.as_ref(), pop[i].as_ref())))
        .collect()
}

/// Per-member front number (0-based) derived from `fronts`.
pub(crate) fn ranks_from_fronts(fronts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut rank = vec![0; n];
    for (r, front) in fronts.iter().enumerate() {
        for &i in front {
            rank[i] = r;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let pop = [[1.0, 1.0], [2.0, 2.0], [0.0, 3.0]];
        assert_eq!(fast_nondominated_sort(&pop), vec![vec![0, 2], vec![1]]);
        let same = [[1.0, 1.0]; 4];
        assert_eq!(fast_nondominated_sort(&same), vec![vec![0, 1, 2, 3]]);
        let chain = [[3.0, 3.0], [1.0, 1.0], [2.0, 2.0]];
        assert_eq!(fast_nondominated_sort(&chain), vec![vec![1], vec![2], vec![0]]);
        assert_eq!(pareto_front_indices(&chain), vec![1]);
    }

    #[test]
    fn fronts_partition_the_population() {
        let pop: Vec<[f64; 2]> = (0..40)
            .map(|i| {
                let t = i as f64;
                [(t * 7.0) % 11.0, (t * 5.0) % 13.0]
            })
            .collect();
        let fronts = fast_nondominated_sort(&pop);
        let mut all: Vec<usize> = fronts.concat();
        all.sort_unstable();
        assert_eq!(all, (0..40).collect::<Vec<_>>());
        for w in fronts.windows(2) {
            for &j in &w[1] {
                assert!(w[0].iter().any(|&i| dominates(&pop[i], &pop[j])));
            }
        }
    }
}
