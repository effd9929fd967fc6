//! Real-coded variation and selection operators.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dominance;
use crate::objective::{Bounds, DecisionVector, Solution};
use crate::{Error, Result};

/// SBX and polynomial mutation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationConfig {
    pub eta_xover: f64,
    pub eta_mut: f64,
    pub p_xover: f64,
    pub p_mut: f64,
}

impl VariationConfig {
    pub fn new(eta_xover: f64, eta_mut: f64, p_xover: f64, p_mut: f64) -> Result<Self> {
        let cfg = Self {
            eta_xover,
            eta_mut,
            p_xover,
            p_mut,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `p_xover = 1` and `p_mut = 1/n` for an n-variable problem.
    pub fn with_indices(eta_xover: f64, eta_mut: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("variable count must be positive".into()));
        }
        Self::new(eta_xover, eta_mut, 1.0, 1.0 / n as f64)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, eta) in [("eta_xover", self.eta_xover), ("eta_mut", self.eta_mut)] {
            if !(eta >= 0.0) || !eta.is_finite() {
                return Err(Error::InvalidArgument(alloc::format!("{name} must be a finite value >= 0")));
            }
        }
        for (name, p) in [("p_xover", self.p_xover), ("p_mut", self.p_mut)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(alloc::format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Seeded random stream owned by a single run.
///
/// ChaCha8 keyed with `seed_from_u64(seed)`. Child streams keep the key and
/// switch the ChaCha stream number, so `RngStream::new(s).child(k)` is fully
/// determined by `(s, k)` and never overlaps the parent (stream 0).
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream `k` under the same key, positioned at its start.
    /// `k = 0` is the parent's own stream.
    pub fn child(&self, k: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k);
        Self { seed: self.seed, rng }
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform index in [0, n).
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> core::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// SBX spread factor β for a uniform draw `u` in [0, 1).
pub fn sbx_spread_factor(u: f64, eta: f64) -> f64 {
    let exponent = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(exponent)
    }
}

/// Polynomial mutation perturbation δ in [-1, 1] for a uniform draw `u`.
pub fn mutation_delta(u: f64, eta: f64) -> f64 {
    let exponent = 1.0 / (eta + 1.0);
    if u < 0.5 {
        (2.0 * u).powf(exponent) - 1.0
    } else {
        1.0 - (2.0 * (1.0 - u)).powf(exponent)
    }
}

fn check_len(x: &[f64], bounds: &Bounds) -> Result<()> {
    if x.len() != bounds.len() {
        return Err(Error::DimensionMismatch {
            expected: bounds.len(),
            found: x.len(),
        });
    }
    Ok(())
}

/// Simulated binary crossover with clipping to `bounds`.
pub fn sbx_crossover(
    p1: &DecisionVector,
    p2: &DecisionVector,
    cfg: &VariationConfig,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> Result<(DecisionVector, DecisionVector)> {
    check_len(p1, bounds)?;
    check_len(p2, bounds)?;
    let mut c1: Vec<f64> = p1.to_vec();
    let mut c2: Vec<f64> = p2.to_vec();
    if rng.chance(cfg.p_xover) {
        for i in 0..c1.len() {
            let (a, b) = (p1[i], p2[i]);
            if !rng.chance(0.5) || (a - b).abs() <= 1e-14 {
                continue;
            }
            let beta = sbx_spread_factor(rng.uniform(), cfg.eta_xover);
            let lo = bounds.clamp(i, 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b));
            let hi = bounds.clamp(i, 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b));
            if rng.chance(0.5) {
                (c1[i], c2[i]) = (hi, lo);
            } else {
                (c1[i], c2[i]) = (lo, hi);
            }
        }
    }
    Ok((DecisionVector::new_unchecked(c1), DecisionVector::new_unchecked(c2)))
}

/// Polynomial mutation with clipping to `bounds`.
pub fn polynomial_mutation(
    x: &DecisionVector,
    cfg: &VariationConfig,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> Result<DecisionVector> {
    check_len(x, bounds)?;
    let mut y = x.to_vec();
    for (i, v) in y.iter_mut().enumerate() {
        if rng.chance(cfg.p_mut) {
            let delta = mutation_delta(rng.uniform(), cfg.eta_mut);
            let width = bounds.upper()[i] - bounds.lower()[i];
            *v = bounds.clamp(i, *v + delta * width);
        }
    }
    Ok(DecisionVector::new_unchecked(y))
}

/// Uniform random point inside `bounds`.
pub fn random_decision_vector(bounds: &Bounds, rng: &mut RngStream) -> DecisionVector {
    let values = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .enumerate()
        .map(|(i, (&l, &u))| bounds.clamp(i, l + rng.uniform() * (u - l)))
        .collect();
    DecisionVector::new_unchecked(values)
}

/// Binary Pareto tournament; returns the winner's index.
pub fn tournament_index<S: AsRef<[f64]>>(pop: &[S], rng: &mut RngStream) -> Result<usize> {
    match pop.len() {
        0 => Err(Error::EmptySet),
        1 => Ok(0),
        n => {
            let i = rng.index(n);
            let mut j = rng.index(n - 1);
            if j >= i {
                j += 1;
            }
            let (a, b) = (pop[i].as_ref(), pop[j].as_ref());
            Ok(if dominance::dominates(a, b) {
                i
            } else if dominance::dominates(b, a) {
                j
            } else if rng.chance(0.5) {
                i
            } else {
                j
            })
        }
    }
}

/// Binary Pareto tournament on penalized objectives.
pub fn tournament_select<'a>(pop: &'a [Solution], rng: &mut RngStream) -> Result<&'a Solution> {
    tournament_index(pop, rng).map(|i| &pop[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::ObjectiveVector;
    use alloc::vec;

    fn dv(v: &[f64]) -> DecisionVector {
        DecisionVector::new_unchecked(v.to_vec())
    }

    #[test]
    fn spread_and_delta_are_neutral_at_half() {
        for eta in [0.0, 2.0, 15.0, 20.0] {
            assert_eq!(sbx_spread_factor(0.5, eta), 1.0);
            assert_eq!(mutation_delta(0.5, eta), 0.0);
        }
        assert!(mutation_delta(0.0, 20.0) == -1.0);
        assert!(sbx_spread_factor(0.25, 1.0) < 1.0);
        assert!(sbx_spread_factor(0.75, 1.0) > 1.0);
    }

    #[test]
    fn crossover_gate_and_identical_parents() {
        let bounds = Bounds::uniform(4, 0.0, 1.0).unwrap();
        let mut rng = RngStream::new(1);
        let no_x = VariationConfig::new(15.0, 20.0, 0.0, 0.25).unwrap();
        let (p1, p2) = (dv(&[0.1, 0.2, 0.3, 0.4]), dv(&[0.9, 0.8, 0.7, 0.6]));
        let (c1, c2) = sbx_crossover(&p1, &p2, &no_x, &bounds, &mut rng).unwrap();
        assert_eq!((c1, c2), (p1.clone(), p2));

        let always = VariationConfig::new(2.0, 20.0, 1.0, 0.25).unwrap();
        for _ in 0..100 {
            let (c1, c2) = sbx_crossover(&p1, &p1, &always, &bounds, &mut rng).unwrap();
            assert_eq!(c1, p1);
            assert_eq!(c2, p1);
        }
    }

    #[test]
    fn mutation_gate_and_lower_bound() {
        let bounds = Bounds::uniform(3, 0.0, 1.0).unwrap();
        let mut rng = RngStream::new(2);
        let off = VariationConfig::new(15.0, 20.0, 1.0, 0.0).unwrap();
        let x = dv(&[0.3, 0.5, 0.7]);
        assert_eq!(polynomial_mutation(&x, &off, &bounds, &mut rng).unwrap(), x);

        let on = VariationConfig::new(15.0, 5.0, 1.0, 1.0).unwrap();
        let low = dv(&[0.0, 0.0, 0.0]);
        for _ in 0..200 {
            let y = polynomial_mutation(&low, &on, &bounds, &mut rng).unwrap();
            assert!(y.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
    }

    #[test]
    fn child_streams_are_reproducible_and_distinct() {
        let root = RngStream::new(42);
        let mut a = root.child(3);
        let mut b = RngStream::new(42).child(3);
        let mut c = root.child(4);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    fn sol(f: &[f64]) -> Solution {
        Solution::from_objectives(ObjectiveVector::new(f.to_vec()).unwrap())
    }

    #[test]
    fn tournament_examples() {
        let mut rng = RngStream::new(9);
        let empty: Vec<Solution> = vec![];
        assert_eq!(tournament_select(&empty, &mut rng), Err(Error::EmptySet));
        let one = vec![sol(&[1.0, 1.0])];
        assert_eq!(tournament_select(&one, &mut rng).unwrap(), &one[0]);
        let pair = vec![sol(&[2.0, 2.0]), sol(&[1.0, 1.0])];
        for _ in 0..50 {
            assert_eq!(tournament_index(&pair, &mut rng).unwrap(), 1);
        }
    }

    #[test]
    fn tournament_is_fair_between_incomparable_members() {
        let pop = vec![sol(&[1.0, 3.0]), sol(&[3.0, 1.0])];
        let mut rng = RngStream::new(123);
        let trials = 10_000;
        let first = (0..trials)
            .filter(|_| tournament_index(&pop, &mut rng).unwrap() == 0)
            .count() as f64;
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((first - 5_000.0).abs() <= 3.0 * sigma, "first chosen {first} times");
    }
}
