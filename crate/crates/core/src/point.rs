//! Dense real vectors.
//!
//! A [`Point`] is the iterate type of every algorithm in this crate: the
//! SGD iterate, subgradients, running averages and optima are all dense
//! `f64` vectors of a fixed per-experiment dimension. All coordinates are
//! expected to stay finite; constructors and the experiment loop check
//! this at the boundaries.

use crate::error::{Error, Result};

/// A dense vector in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    /// The origin of `R^d`.
    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    /// Wraps a coordinate vector, rejecting NaN and infinities.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::usage(format!(
                "non-finite coordinate {} at index {i}",
                coords[i]
            )));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Point) -> f64 {
        assert_dim(self, other);
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_l1(&self) -> f64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        assert_dim(self, other);
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    /// `self += scale * other`, in place.
    pub fn add_scaled(&mut self, scale: f64, other: &Point) {
        assert_dim(self, other);
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += scale * b;
        }
    }

    /// `self = (1 - weight) * self + weight * other`, the convex-combination
    /// step every running average in this crate is built on.
    pub fn mix(&mut self, weight: f64, other: &Point) {
        assert_dim(self, other);
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = (1.0 - weight) * *a + weight * b;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for a in &mut self.0 {
            *a *= factor;
        }
    }

    pub fn scaled(&self, factor: f64) -> Point {
        let mut out = self.clone();
        out.scale(factor);
        out
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    /// Checks that `other` lives in the same space, as a `Result` for use at
    /// API boundaries (the arithmetic ops themselves panic on mismatch).
    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            })
        }
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point(coords)
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point(coords.to_vec())
    }
}

#[track_caller]
fn assert_dim(a: &Point, b: &Point) {
    assert_eq!(
        a.dim(),
        b.dim(),
        "dimension mismatch: {} vs {}",
        a.dim(),
        b.dim()
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_norms() {
        let a = Point::from(vec![3.0, -4.0]);
        let b = Point::from(vec![1.0, 1.0]);
        assert_eq!(a.dot(&b), -1.0);
        assert_eq!(a.norm(), 5.0);
        assert_eq!(a.norm_l1(), 7.0);
        assert_eq!(a.dist_sq(&b), 4.0 + 25.0);
    }

    #[test]
    fn add_scaled_matches_axpy() {
        let mut a = Point::from(vec![1.0, 2.0]);
        a.add_scaled(-0.5, &Point::from(vec![2.0, 2.0]));
        assert_eq!(a.as_slice(), &[0.0, 1.0]);
    }

    #[test]
    fn mix_is_convex_combination() {
        let mut a = Point::from(vec![2.0, 0.0]);
        a.mix(0.5, &Point::from(vec![0.0, 2.0]));
        assert_eq!(a.as_slice(), &[1.0, 1.0]);
    }

    #[test]
    fn new_rejects_non_finite() {
        assert!(Point::new(vec![1.0, f64::NAN]).is_err());
        assert!(Point::new(vec![f64::INFINITY]).is_err());
        assert!(Point::new(vec![1.0, -2.0]).is_ok());
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn mismatched_dot_panics() {
        let _ = Point::from(vec![1.0]).dot(&Point::from(vec![1.0, 2.0]));
    }
}
