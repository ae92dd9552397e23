//! Möbius arithmetic and punctured-torus Kleinian groups built from trace
//! data.

mod converge;
mod fit;
mod limit;
mod mobius;
mod ptorus;
mod torus;

use num_complex::Complex64;
use thiserror::Error;

pub use converge::{converge_experiment, ConvergeOptions, ConvergeStep, StepOutcome, TracePair};
pub use fit::{circle_fit, hausdorff_distance, CircleFit, Metric};
pub use limit::{
    canonical, limit_set, limit_set_with_budget, LimitSetSample, DEDUP_TOLERANCE, DEFAULT_DEPTH, DEFAULT_EPS,
    DEFAULT_NODE_BUDGET,
};
pub use mobius::{commutator_trace, FixedPoints, Kind, Mobius, Point, DET_TOLERANCE, TRACE_TOLERANCE};
pub use ptorus::{
    bq_classify, farey_trace, farey_trace_of, farey_triples, jorgensen, ptor_group, BqResult, Fraction, GroupKind,
    GroupSpec, Jorgensen, Root, TraceTriple, MARKOV_TOLERANCE,
};
pub use torus::{quotient_torus_pullback, QuotientTorusCoords};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KleinianError {
    #[error("matrix is singular")]
    Singular,
    #[error("the identity has no fixed points to report")]
    IsIdentity,
    #[error("trace data makes the construction degenerate")]
    DegenerateTraces,
    #[error("generators share a fixed point")]
    Elementary,
    #[error("fraction {p}/{q} is not in lowest terms")]
    NotReduced { p: u64, q: u64 },
    #[error("group has no generators")]
    EmptyGroup,
    #[error("enumeration stopped after {budget} nodes")]
    BudgetExceeded { budget: usize, partial: Box<LimitSetSample> },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("empty point set")]
    EmptySet,
    #[error("map is not loxodromic")]
    NotLoxodromic,
    #[error("discreteness unknown: trace {trace} at {witness}")]
    DiscretenessUnknown { witness: Fraction, trace: Complex64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
