//! Cone ε-dominance for multiobjective evolutionary optimization.
//!
//! The crate is `no_std` (it needs `alloc`) and covers the computational
//! side of the toolkit:
//!
//! * [`objective`]: objective/decision vectors, solutions and reference points.
//! * [`dominance`]: Pareto, additive ε and cone ε dominance, box indexing and
//!   ε sizing formulas.
//! * [`archive`]: grid archives driven by the cone ε and ε acceptance rules,
//!   plus an unbounded Pareto archive.
//! * [`variation`]: SBX, polynomial mutation, tournament selection and the
//!   seeded random stream every run owns.
//! * [`problems`]: the Deb52, Pol, ZDT and DTLZ benchmark problems and their
//!   reference fronts.
//! * [`algorithms`]: NSGA-II and its crowding/clustering variants, SPEA2, and
//!   the steady-state ε-MOEA / cone ε-MOEA engine.
//! * [`metrics`]: convergence γ, diversity Δ, hypervolume and coverage of many
//!   sets.
//!
//! File formats, the experiment runner and the command line live in the
//! `coneps-bench` crate.

#![no_std]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod algorithms;
pub mod archive;
pub mod dominance;
mod error;
pub mod metrics;
pub mod objective;
pub mod problems;
pub mod variation;

pub use error::{Error, Result};
pub use objective::{DecisionVector, ObjectiveSense, ObjectiveVector, Sense, Solution};
