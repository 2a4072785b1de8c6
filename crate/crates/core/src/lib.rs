//! Projected stochastic subgradient descent for non-smooth convex
//! optimization, the iterate-averaging schemes that turn its iterates into
//! answers, and the closed-form error bounds those answers satisfy.
//!
//! The pieces:
//!
//! * [`point`] / [`domain`] — dense vectors and feasible sets with
//!   closed-form projections.
//! * [`objective`] / [`dataset`] / [`synthetic`] — convex objectives with
//!   exact values, exact subgradients and seeded stochastic subgradient
//!   oracles; SVMlight ingestion; seeded problem generators.
//! * [`schedule`] / [`engine`] — the `1/(lambda t)` and `c/sqrt(t)` step
//!   schedules and the SGD loop itself, which feeds iterates to averaging
//!   observers and snapshots them on a record grid.
//! * [`averaging`] — last-iterate, uniform, suffix and poly-decay schemes.
//! * [`analysis`] — the error-bound evaluators, log-log rate fitting,
//!   aggregation over repetitions, and bound-compliance checks.

pub mod analysis;
pub mod averaging;
pub mod dataset;
pub mod domain;
pub mod engine;
pub mod error;
pub mod objective;
pub mod point;
pub mod schedule;
pub mod synthetic;

pub use analysis::{
    aggregate, check_bound_compliance, fit_rate, theoretical_bound, Aggregate, BoundKind,
    BoundParams, ComplianceReport, RateFit,
};
pub use averaging::{poly_decay_weights, suffix_start, Averager, SchemeSpec};
pub use dataset::{parse_svmlight, parse_svmlight_with_dim, Dataset, Example};
pub use domain::Domain;
pub use engine::{
    default_record_grid, mix_seed, reference_optimum, run_sgd, sgd_step, ReferenceOptimum,
    RunConfig, RunRecord,
};
pub use error::{Error, Result};
pub use objective::{Objective, OracleAux, OracleDraw};
pub use point::Point;
pub use schedule::StepSchedule;
pub use synthetic::{L1Spec, QuadraticSpec, SvmInstance, SvmSpec, SyntheticSpec};
