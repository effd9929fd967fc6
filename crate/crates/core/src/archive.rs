//! Grid archives.
//!
//! [`BoundedArchive`] keeps at most one solution per ε-box and rejects anything
//! dominated under its acceptance relation (cone ε or additive ε) applied at
//! box level. The update follows the four-branch rule: dominated → reject;
//! shares a box → replace the incumbent if the newcomer Pareto-dominates it or
//! sits closer to the box corner; dominates members → evict them and insert;
//! otherwise insert.
//!
//! [`ParetoArchive`] is the plain unbounded nondominated store used by the
//! baselines.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dominance::{self, box_lattice, box_origin_distance, ConeMatrix, EpsilonVector, LAMBDA_TOLERANCE};
use crate::objective::Sense;
use crate::objective::{ObjectiveSense, Solution};
use crate::{Error, Result};

/// Relation a [`BoundedArchive`] uses to accept or evict members.
#[derive(Debug, Clone, PartialEq)]
pub enum Acceptance {
    ConeEpsilon(ConeMatrix),
    Epsilon(EpsilonVector),
}

impl Acceptance {
    pub fn eps(&self) -> &EpsilonVector {
        match self {
            Acceptance::ConeEpsilon(cone) => cone.eps(),
            Acceptance::Epsilon(eps) => eps,
        }
    }

    /// Whether a box offset by `steps` lattice cells (per objective, towards
    /// worse values) from a member's box lies in the member's dominance cone.
    ///
    /// The cone's apex is the member's box corner: the additive ε rule covers
    /// the whole orthant `steps ≥ 0`, the cone ε rule solves `Ψλ = steps∘ε`.
    pub fn covers_offset(&self, steps: &[i64]) -> bool {
        match self {
            Acceptance::Epsilon(_) => steps.iter().all(|&d| d >= 0),
            Acceptance::ConeEpsilon(cone) => {
                let m = steps.len();
                let mut z = [0.0; 8];
                if m > z.len() {
                    let z: Vec<f64> = steps.iter().zip(cone.eps().iter()).map(|(&d, e)| d as f64 * e).collect();
                    return cone.solve(&z).iter().all(|&l| l >= -LAMBDA_TOLERANCE);
                }
                for (zi, (&d, e)) in z.iter_mut().zip(steps.iter().zip(cone.eps().iter())) {
                    *zi = d as f64 * e;
                }
                cone.solve_in_place(&mut z[..m]);
                z[..m].iter().all(|&l| l >= -LAMBDA_TOLERANCE)
            }
        }
    }
}

/// What happened to a candidate offered to an archive.
#[derive(Debug, Clone, PartialEq)]
pub enum Insertion {
    Accepted,
    Rejected,
    /// Inserted after evicting these former members.
    Replaced(Vec<Solution>),
}

impl Insertion {
    pub fn is_inserted(&self) -> bool {
        !matches!(self, Insertion::Rejected)
    }
}

#[derive(Debug, Clone)]
struct Member {
    solution: Solution,
    lattice: Vec<i64>,
    corner_distance: f64,
}

/// Nondominated store with one member per ε-box.
#[derive(Debug, Clone)]
pub struct BoundedArchive {
    members: Vec<Member>,
    boxes: BTreeMap<Vec<i64>, usize>,
    acceptance: Acceptance,
    sense: ObjectiveSense,
}

impl BoundedArchive {
    pub fn new(acceptance: Acceptance, sense: ObjectiveSense) -> Result<Self> {
        if sense.len() != acceptance.eps().len() {
            return Err(Error::DimensionMismatch {
                expected: acceptance.eps().len(),
                found: sense.len(),
            });
        }
        Ok(Self {
            members: Vec::new(),
            boxes: BTreeMap::new(),
            acceptance,
            sense,
        })
    }

    /// Cone ε archive over minimized objectives.
    pub fn cone(cone: ConeMatrix) -> Self {
        let sense = ObjectiveSense::minimize(cone.dim());
        Self::new(Acceptance::ConeEpsilon(cone), sense).expect("sense built from the cone")
    }

    /// Additive ε archive over minimized objectives.
    pub fn epsilon(eps: EpsilonVector) -> Self {
        let sense = ObjectiveSense::minimize(eps.len());
        Self::new(Acceptance::Epsilon(eps), sense).expect("sense built from eps")
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl ExactSizeIterator<Item = &Solution> + '_ {
        self.members.iter().map(|m| &m.solution)
    }

    pub fn get(&self, i: usize) -> Option<&Solution> {
        self.members.get(i).map(|m| &m.solution)
    }

    pub fn into_solutions(self) -> Vec<Solution> {
        self.members.into_iter().map(|m| m.solution).collect()
    }

    /// Lattice coordinates of the box holding `y`.
    pub fn lattice_of(&self, y: &[f64]) -> Vec<i64> {
        box_lattice(y, self.acceptance.eps(), &self.sense)
    }

    /// Offers `y` to the archive (both acceptance relations share the same
    /// branch structure).
    pub fn insert(&mut self, y: Solution) -> Result<Insertion> {
        let m = self.acceptance.eps().len();
        if y.fitness().len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: y.fitness().len(),
            });
        }
        Ok(self.insert_unchecked(y))
    }

    /// Archive relation: a member `a` excludes `b` when they occupy different
    /// boxes and `a` either Pareto-dominates `b` or `b`'s box lies in the
    /// cone anchored at `a`'s box corner. Two points in one box are settled
    /// by the within-box rule instead.
    pub fn dominates(&self, a: &[f64], b: &[f64]) -> bool {
        self.relation(a, &self.lattice_of(a), b, &self.lattice_of(b))
    }

    fn relation(&self, a: &[f64], la: &[i64], b: &[f64], lb: &[i64]) -> bool {
        if la == lb {
            return false;
        }
        if dominance::dominates(a, b) {
            return true;
        }
        let mut steps = [0i64; 8];
        let m = la.len();
        if m > steps.len() {
            let steps: Vec<i64> = (0..m).map(|i| self.step(i, la[i], lb[i])).collect();
            return self.acceptance.covers_offset(&steps);
        }
        for (i, s) in steps[..m].iter_mut().enumerate() {
            *s = self.step(i, la[i], lb[i]);
        }
        self.acceptance.covers_offset(&steps[..m])
    }

    fn step(&self, i: usize, from: i64, to: i64) -> i64 {
        match self.sense.get(i) {
            Sense::Minimize => to - from,
            Sense::Maximize => from - to,
        }
    }

    fn insert_unchecked(&mut self, y: Solution) -> Insertion {
        let fy = y.fitness();
        let lattice = self.lattice_of(fy);
        if self
            .members
            .iter()
            .any(|m| self.relation(m.solution.fitness(), &m.lattice, fy, &lattice))
        {
            return Insertion::Rejected;
        }

        let corner_distance = box_origin_distance(fy, self.acceptance.eps(), &self.sense);

        if let Some(&slot) = self.boxes.get(&lattice) {
            let incumbent = &self.members[slot];
            let wins = dominance::dominates(fy, incumbent.solution.fitness())
                || corner_distance < incumbent.corner_distance;
            if !wins {
                return Insertion::Rejected;
            }
            let mut evicted = self.evict_dominated_by(fy, &lattice);
            // the incumbent may already be gone if y dominated it
            if let Some(&slot) = self.boxes.get(&lattice) {
                evicted.push(self.remove_at(slot));
            }
            self.push(y, lattice, corner_distance);
            return Insertion::Replaced(evicted);
        }

        let evicted = self.evict_dominated_by(fy, &lattice);
        self.push(y, lattice, corner_distance);
        if evicted.is_empty() {
            Insertion::Accepted
        } else {
            Insertion::Replaced(evicted)
        }
    }

    fn push(&mut self, solution: Solution, lattice: Vec<i64>, corner_distance: f64) {
        self.boxes.insert(lattice.clone(), self.members.len());
        self.members.push(Member {
            solution,
            lattice,
            corner_distance,
        });
    }

    fn remove_at(&mut self, slot: usize) -> Solution {
        let removed = self.members.swap_remove(slot);
        self.boxes.remove(&removed.lattice);
        if let Some(moved) = self.members.get(slot) {
            self.boxes.insert(moved.lattice.clone(), slot);
        }
        removed.solution
    }

    fn evict_dominated_by(&mut self, fy: &[f64], ly: &[i64]) -> Vec<Solution> {
        let mut evicted = Vec::new();
        let mut i = 0;
        while i < self.members.len() {
            if self.relation(fy, ly, self.members[i].solution.fitness(), &self.members[i].lattice) {
                evicted.push(self.remove_at(i));
            } else {
                i += 1;
            }
        }
        evicted
    }

    /// Checks the archive invariants: no member dominates another under the
    /// acceptance relation, and box indices are pairwise distinct.
    pub fn check_invariants(&self) -> core::result::Result<(), ArchiveViolation> {
        for (i, a) in self.members.iter().enumerate() {
            for (j, b) in self.members.iter().enumerate() {
                if i == j {
                    continue;
                }
                if self.relation(a.solution.fitness(), &a.lattice, b.solution.fitness(), &b.lattice) {
                    return Err(ArchiveViolation::Dominated { dominator: i, dominated: j });
                }
                if i < j && a.lattice == b.lattice {
                    return Err(ArchiveViolation::SharedBox { first: i, second: j });
                }
            }
        }
        if self.boxes.len() != self.members.len() {
            return Err(ArchiveViolation::StaleIndex);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchiveViolation {
    Dominated { dominator: usize, dominated: usize },
    SharedBox { first: usize, second: usize },
    StaleIndex,
}

/// Cone ε archive update for a single candidate.
pub fn cone_archive_insert(archive: &mut BoundedArchive, y: Solution) -> Result<Insertion> {
    if !matches!(archive.acceptance, Acceptance::ConeEpsilon(_)) {
        return Err(Error::InvalidArgument("archive does not use cone-epsilon acceptance".into()));
    }
    archive.insert(y)
}

/// Additive ε archive update for a single candidate.
pub fn eps_archive_insert(archive: &mut BoundedArchive, y: Solution) -> Result<Insertion> {
    if !matches!(archive.acceptance, Acceptance::Epsilon(_)) {
        return Err(Error::InvalidArgument("archive does not use epsilon acceptance".into()));
    }
    archive.insert(y)
}

/// Unbounded set of mutually Pareto-nondominated solutions.
#[derive(Debug, Clone, Default)]
pub struct ParetoArchive {
    members: Vec<Solution>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn into_solutions(self) -> Vec<Solution> {
        self.members
    }

    pub fn insert(&mut self, y: Solution) -> Insertion {
        let fy = y.fitness();
        if self
            .members
            .iter()
            .any(|m| dominance::dominates(m.fitness(), fy))
        {
            return Insertion::Rejected;
        }
        let mut evicted = Vec::new();
        let mut i = 0;
        while i < self.members.len() {
            if dominance::dominates(fy, self.members[i].fitness()) {
                evicted.push(self.members.swap_remove(i));
            } else {
                i += 1;
            }
        }
        self.members.push(y);
        if evicted.is_empty() {
            Insertion::Accepted
        } else {
            Insertion::Replaced(evicted)
        }
    }
}

pub fn pareto_archive_insert(archive: &mut ParetoArchive, y: Solution) -> Insertion {
    archive.insert(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::build_cone_matrix;
    use crate::objective::ObjectiveVector;
    use alloc::vec;

    fn sol(f: &[f64]) -> Solution {
        Solution::from_objectives(ObjectiveVector::new(f.to_vec()).unwrap())
    }

    fn cone_archive(eps: f64, kappa: f64) -> BoundedArchive {
        BoundedArchive::cone(build_cone_matrix(EpsilonVector::uniform(eps, 2).unwrap(), kappa).unwrap())
    }

    fn fronts(a: &BoundedArchive) -> Vec<Vec<f64>> {
        a.members().map(|s| s.fitness().to_vec()).collect()
    }

    #[test]
    fn empty_archive_accepts() {
        let mut a = cone_archive(0.1, 0.5);
        assert_eq!(cone_archive_insert(&mut a, sol(&[0.3, 0.7])).unwrap(), Insertion::Accepted);
        let mut e = BoundedArchive::epsilon(EpsilonVector::uniform(0.1, 2).unwrap());
        assert_eq!(eps_archive_insert(&mut e, sol(&[0.3, 0.7])).unwrap(), Insertion::Accepted);
    }

    #[test]
    fn cone_dominated_candidate_is_rejected() {
        let mut a = cone_archive(0.1, 0.5);
        a.insert(sol(&[1.0, 1.0])).unwrap();
        assert_eq!(a.insert(sol(&[1.05, 1.05])).unwrap(), Insertion::Rejected);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn shared_box_closer_candidate_replaces_incumbent() {
        let mut a = cone_archive(0.1, 0.5);
        a.insert(sol(&[0.37, 0.42])).unwrap();
        // corner (0.3, 0.4): distances 0.07280 vs 0.01414
        let out = a.insert(sol(&[0.31, 0.41])).unwrap();
        match out {
            Insertion::Replaced(evicted) => {
                assert_eq!(evicted.len(), 1);
                assert_eq!(evicted[0].fitness(), &[0.37, 0.42]);
            }
            other => panic!("expected replacement, got {other:?}"),
        }
        assert_eq!(fronts(&a), vec![vec![0.31, 0.41]]);
    }

    #[test]
    fn cone_accepts_what_epsilon_rejects() {
        // member box (10, 10), candidate box (11, 10), mutually nondominated
        let mut e = BoundedArchive::epsilon(EpsilonVector::uniform(0.1, 2).unwrap());
        e.insert(sol(&[1.09, 1.01])).unwrap();
        assert_eq!(e.insert(sol(&[1.11, 1.0])).unwrap(), Insertion::Rejected);

        let mut c = cone_archive(0.1, 0.5);
        c.insert(sol(&[1.09, 1.01])).unwrap();
        assert!(c.insert(sol(&[1.11, 1.0])).unwrap().is_inserted());
        assert_eq!(c.len(), 2);
        c.check_invariants().unwrap();
    }

    #[test]
    fn relation_is_applied_to_boxes() {
        // point-level ε-dominance holds, yet box (9, 13) is not behind box (10, 10)
        let eps = EpsilonVector::uniform(0.1, 2).unwrap();
        assert!(dominance::eps_dominates(&[1.0, 1.0], &[0.98, 1.3], &eps).unwrap());
        let mut e = BoundedArchive::epsilon(eps);
        e.insert(sol(&[1.0, 1.0])).unwrap();
        assert_eq!(e.insert(sol(&[0.98, 1.3])).unwrap(), Insertion::Accepted);
        assert!(e.dominates(&[1.0, 1.0], &[1.05, 1.32]));
        assert!(!e.dominates(&[1.0, 1.0], &[1.05, 1.05]));
    }

    #[test]
    fn epsilon_same_box_farther_candidate_is_rejected() {
        // corner (0.3, 0.4): incumbent 0.04123 away, candidate 0.09055
        let mut e = BoundedArchive::epsilon(EpsilonVector::uniform(0.1, 2).unwrap());
        e.insert(sol(&[0.31, 0.44])).unwrap();
        assert_eq!(e.insert(sol(&[0.39, 0.41])).unwrap(), Insertion::Rejected);
        assert_eq!(fronts(&e), vec![vec![0.31, 0.44]]);
    }

    #[test]
    fn equal_corner_distance_keeps_incumbent() {
        let mut a = cone_archive(0.25, 0.99);
        a.insert(sol(&[0.3125, 0.4375])).unwrap();
        assert_eq!(a.insert(sol(&[0.4375, 0.3125])).unwrap(), Insertion::Rejected);
        assert_eq!(fronts(&a), vec![vec![0.3125, 0.4375]]);
    }

    #[test]
    fn dominating_candidate_evicts_members() {
        let mut a = cone_archive(0.1, 0.5);
        a.insert(sol(&[0.5, 2.0])).unwrap();
        a.insert(sol(&[2.0, 0.5])).unwrap();
        let out = a.insert(sol(&[0.2, 0.2])).unwrap();
        assert!(matches!(out, Insertion::Replaced(ref v) if v.len() == 2));
        assert_eq!(fronts(&a), vec![vec![0.2, 0.2]]);
    }

    #[test]
    fn reinserting_a_member_is_a_no_op() {
        let mut a = cone_archive(0.05, 0.5);
        for p in [[0.0, 1.0], [0.3, 0.6], [0.6, 0.3], [1.0, 0.0]] {
            a.insert(sol(&p)).unwrap();
        }
        let before = fronts(&a);
        for p in before.clone() {
            assert_eq!(a.insert(sol(&p)).unwrap(), Insertion::Rejected);
        }
        assert_eq!(fronts(&a), before);
    }

    #[test]
    fn wrong_acceptance_or_dimension_is_an_error() {
        let mut a = cone_archive(0.1, 0.5);
        assert!(eps_archive_insert(&mut a, sol(&[0.1, 0.2])).is_err());
        assert!(a.insert(sol(&[0.1, 0.2, 0.3])).is_err());
        let mut e = BoundedArchive::epsilon(EpsilonVector::uniform(0.1, 2).unwrap());
        assert!(cone_archive_insert(&mut e, sol(&[0.1, 0.2])).is_err());
    }

    #[test]
    fn pareto_archive_examples() {
        let mut p = ParetoArchive::new();
        assert_eq!(pareto_archive_insert(&mut p, sol(&[1.0, 1.0])), Insertion::Accepted);
        assert_eq!(p.insert(sol(&[2.0, 2.0])), Insertion::Rejected);

        let mut p = ParetoArchive::new();
        p.insert(sol(&[1.0, 3.0]));
        p.insert(sol(&[3.0, 1.0]));
        assert_eq!(p.insert(sol(&[2.0, 2.0])), Insertion::Accepted);
        assert_eq!(p.len(), 3);
        assert!(matches!(p.insert(sol(&[0.5, 0.5])), Insertion::Replaced(ref v) if v.len() == 3));
        assert_eq!(p.len(), 1);
    }
}
