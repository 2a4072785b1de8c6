//! Step-size schedules.

use crate::error::{Error, Result};

/// How the step size decays with the round index `t` (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    /// `eta_t = 1/(lambda t)`, the schedule for `lambda`-strongly convex
    /// objectives. Running with `c/(lambda t)` for `c > 1` is expressed by
    /// passing the smaller curvature `lambda/c` here.
    StronglyConvex { lambda: f64 },
    /// `eta_t = c/sqrt(t)`, the schedule for general convex objectives over
    /// a bounded domain.
    GeneralConvex { c: f64 },
    /// `eta_t = eta`, a constant step.
    Constant { eta: f64 },
}

impl StepSchedule {
    pub fn validate(&self) -> Result<()> {
        let (name, value) = match self {
            StepSchedule::StronglyConvex { lambda } => ("lambda", *lambda),
            StepSchedule::GeneralConvex { c } => ("c", *c),
            StepSchedule::Constant { eta } => ("eta", *eta),
        };
        if value.is_finite() && value > 0.0 {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "step schedule parameter {name} must be a positive finite real, got {value}"
            )))
        }
    }

    /// Step size for round `t >= 1`.
    pub fn step_size(&self, t: usize) -> f64 {
        debug_assert!(t >= 1, "rounds are 1-based");
        match self {
            StepSchedule::StronglyConvex { lambda } => 1.0 / (lambda * t as f64),
            StepSchedule::GeneralConvex { c } => c / (t as f64).sqrt(),
            StepSchedule::Constant { eta } => *eta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_values() {
        assert_eq!(
            StepSchedule::StronglyConvex { lambda: 2.0 }.step_size(5),
            0.1
        );
        assert_eq!(StepSchedule::GeneralConvex { c: 1.0 }.step_size(4), 0.5);
        assert_eq!(
            StepSchedule::Constant { eta: 0.01 }.step_size(1_000_000_000),
            0.01
        );
    }

    #[test]
    fn parameters_must_be_positive() {
        assert!(StepSchedule::StronglyConvex { lambda: 0.0 }.validate().is_err());
        assert!(StepSchedule::GeneralConvex { c: -1.0 }.validate().is_err());
        assert!(StepSchedule::Constant { eta: f64::NAN }.validate().is_err());
        assert!(StepSchedule::StronglyConvex { lambda: 1e-6 }.validate().is_ok());
    }
}
