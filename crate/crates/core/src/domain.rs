//! Feasible sets and Euclidean projections.
//!
//! Three domain shapes cover every experiment in this crate: all of `R^d`,
//! an L2 ball, and an axis-aligned box. Each has a closed-form nearest-point
//! projection and a closed-form diameter.

use crate::error::{Error, Result};
use crate::point::Point;

/// A closed convex feasible set with a closed-form projection.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// All of `R^d`; projection is the identity and the diameter is infinite.
    Unbounded,
    /// `{ w : ||w - center|| <= radius }`.
    L2Ball { center: Point, radius: f64 },
    /// `{ w : lower <= w <= upper }` coordinatewise.
    Box { lower: Point, upper: Point },
}

impl Domain {
    pub fn unbounded() -> Self {
        Domain::Unbounded
    }

    pub fn l2_ball(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::usage(format!(
                "ball radius must be a positive finite real, got {radius}"
            )));
        }
        if !center.is_finite() {
            return Err(Error::usage("ball center must be finite"));
        }
        Ok(Domain::L2Ball { center, radius })
    }

    /// Ball of the given radius around the origin.
    pub fn centered_ball(dim: usize, radius: f64) -> Result<Self> {
        Self::l2_ball(Point::zeros(dim), radius)
    }

    pub fn axis_box(lower: Point, upper: Point) -> Result<Self> {
        lower.check_dim(upper.dim())?;
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::usage("box bounds must be finite"));
        }
        for (i, (lo, hi)) in lower.as_slice().iter().zip(upper.as_slice()).enumerate() {
            if lo > hi {
                return Err(Error::usage(format!(
                    "box bounds inverted at coordinate {i}: {lo} > {hi}"
                )));
            }
        }
        Ok(Domain::Box { lower, upper })
    }

    /// Dimension constraint imposed by the domain, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Domain::Unbounded => None,
            Domain::L2Ball { center, .. } => Some(center.dim()),
            Domain::Box { lower, .. } => Some(lower.dim()),
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != dim => Err(Error::DimensionMismatch {
                expected: d,
                got: dim,
            }),
            _ => Ok(()),
        }
    }

    /// Euclidean-nearest feasible point, in place.
    ///
    /// Idempotent at the bit level: projecting an already-projected point
    /// returns it unchanged.
    pub fn project_in_place(&self, p: &mut Point) {
        match self {
            Domain::Unbounded => {}
            Domain::L2Ball { center, radius } => project_ball(p, center, *radius),
            Domain::Box { lower, upper } => {
                for ((x, lo), hi) in p
                    .coords_mut()
                    .iter_mut()
                    .zip(lower.as_slice())
                    .zip(upper.as_slice())
                {
                    *x = x.max(*lo).min(*hi);
                }
            }
        }
    }

    /// Euclidean-nearest feasible point.
    pub fn project(&self, p: &Point) -> Point {
        let mut out = p.clone();
        self.project_in_place(&mut out);
        out
    }

    /// Supremum of pairwise distances; `+inf` when unbounded.
    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Unbounded => f64::INFINITY,
            Domain::L2Ball { radius, .. } => 2.0 * radius,
            Domain::Box { lower, upper } => upper.dist(lower),
        }
    }

    /// Membership up to an absolute tolerance on the defining inequalities.
    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        match self {
            Domain::Unbounded => true,
            Domain::L2Ball { center, radius } => p.dist(center) <= radius + tol,
            Domain::Box { lower, upper } => p
                .as_slice()
                .iter()
                .zip(lower.as_slice())
                .zip(upper.as_slice())
                .all(|((x, lo), hi)| *x >= lo - tol && *x <= hi + tol),
        }
    }

    /// Supremum of `||w||` over the domain; `+inf` when unbounded.
    pub fn sup_norm(&self) -> f64 {
        match self {
            Domain::Unbounded => f64::INFINITY,
            Domain::L2Ball { center, radius } => center.norm() + radius,
            Domain::Box { lower, upper } => lower
                .as_slice()
                .iter()
                .zip(upper.as_slice())
                .map(|(lo, hi)| lo.abs().max(hi.abs()).powi(2))
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Short human-readable tag used in error messages.
    pub fn describe(&self) -> &'static str {
        match self {
            Domain::Unbounded => "unbounded domain",
            Domain::L2Ball { .. } => "l2 ball",
            Domain::Box { .. } => "box",
        }
    }
}

fn project_ball(p: &mut Point, center: &Point, radius: f64) {
    let r_sq = radius * radius;
    if p.dist_sq(center) <= r_sq {
        // Already feasible; includes the degenerate p == center case.
        return;
    }
    let scale = radius / p.dist(center);
    rescale_towards(p, center, scale);
    // Roundoff in the scaled coordinates can leave the point a few ulps
    // outside; pull it in until the membership test it will face on the
    // next projection holds, which makes projection bitwise idempotent.
    while p.dist_sq(center) > r_sq {
        rescale_towards(p, center, 1.0 - f64::EPSILON);
    }
}

fn rescale_towards(p: &mut Point, center: &Point, scale: f64) {
    for (x, c) in p.coords_mut().iter_mut().zip(center.as_slice()) {
        *x = c + (*x - c) * scale;
    }
}
