//! Root approximants: nest specification, expansions at both ends,
//! parameter solvers, and additive sums of roots.

mod additive;
mod nest;
mod solve;

pub use additive::{AdditiveApproximant, AdditiveTerm};
pub use nest::{standard_schedule, NestSpec, Offset, RootApproximant};
pub use solve::{
    condition_values, solve_small_only, solve_two_point, solve_with_amplitude, AsymptoticCase, MatchCondition,
    SeriesTerm, Side, NEWTON_MAX_ITER, NEWTON_TOL,
};

use thiserror::Error;

use crate::rational::Rational;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApproxError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("outer power is zero: the large-variable limit is a constant")]
    ZeroOuter,
    #[error("order {order} coefficient does not depend on A_{order} (pivot {pivot:e})")]
    DegeneratePivot { order: usize, pivot: f64 },
    #[error("Newton iteration stopped after {iterations} steps with residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64, best: Vec<f64> },
    #[error("base of level {level} is {base} at u = {u}")]
    NegativeBase { level: usize, u: f64, base: f64 },
    #[error("nest implies large power {implied}, case requires {expected}")]
    PowerMismatch { implied: Rational, expected: Rational },
    #[error("invalid nest: {0}")]
    InvalidSpec(String),
    #[error("invalid conditions: {0}")]
    InvalidConditions(String),
}

pub type Result<T> = std::result::Result<T, ApproxError>;
