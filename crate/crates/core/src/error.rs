use alloc::string::String;

use crate::problems::ProblemId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty set")]
    EmptySet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("at least {required} objectives are required, found {found}")]
    TooFewObjectives { required: usize, found: usize },
    #[error("objective vector has a non-finite component at index {0}")]
    NonFinite(usize),
    #[error("variable {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("kappa out of range: {0} (expected 0 <= kappa < 1)")]
    KappaOutOfRange(f64),
    #[error("epsilon component {index} must be finite and > 0, found {value}")]
    InvalidEpsilon { index: usize, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no sign change on the bracket; cannot locate the root")]
    NoSignChange,
    #[error("cannot keep {keep} members of a set of {len}")]
    TruncationTooLarge { keep: usize, len: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("reference front is not mutually nondominated: point {dominator} dominates point {dominated}")]
    DominatedReferencePoint { dominator: usize, dominated: usize },
    #[error("{0} has no closed-form Pareto front; load its reference front from a file")]
    NoClosedForm(ProblemId),
    #[error("unsupported objective count: {0}")]
    UnsupportedObjectiveCount(usize),
    #[error("archive invariant violated: {0}")]
    ArchiveInvariant(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
