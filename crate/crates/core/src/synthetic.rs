//! Seeded generators for desk-scale test problems.
//!
//! Every generator is a pure function of its spec (the seed included):
//! calling it twice yields bitwise-identical objectives, which is what
//! makes experiment configs reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::{Dataset, Example};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::point::Point;

/// Spec for a hinge-loss problem over generated examples.
///
/// Examples live on the unit sphere. Labels come from a random witness
/// hyperplane with a guaranteed margin, then are flipped independently with
/// probability `flip_prob`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmSpec {
    pub dim: usize,
    pub examples: usize,
    /// Nonzero features per example; `None` generates dense examples.
    pub nnz: Option<usize>,
    /// Lower bound on `y <witness, x>` before label flips; in `[0, 1)`.
    pub margin: f64,
    pub flip_prob: f64,
    pub lambda: f64,
    pub seed: u64,
}

/// A generated SVM problem together with its construction certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmInstance {
    pub dataset: Dataset,
    /// Unit vector whose hyperplane separates the unflipped labels.
    pub witness: Point,
    /// Which examples had their label flipped.
    pub flipped: Vec<bool>,
}

impl SvmSpec {
    pub fn generate(&self) -> Result<SvmInstance> {
        let dim = self.dim;
        if dim == 0 || self.examples == 0 {
            return Err(Error::usage("svm spec needs dim >= 1 and examples >= 1"));
        }
        let nnz = self.nnz.unwrap_or(dim);
        if nnz == 0 || nnz > dim {
            return Err(Error::usage(format!(
                "nnz must be in [1, dim]; got {nnz} for dimension {dim}"
            )));
        }
        if !(0.0..1.0).contains(&self.margin) {
            return Err(Error::usage(format!(
                "margin must be in [0, 1), got {}",
                self.margin
            )));
        }
        if !(0.0..=1.0).contains(&self.flip_prob) {
            return Err(Error::usage(format!(
                "flip_prob must be in [0, 1], got {}",
                self.flip_prob
            )));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let witness = random_unit_vector(&mut rng, dim);
        let w = witness.as_slice();

        let mut examples = Vec::with_capacity(self.examples);
        let mut flipped = Vec::with_capacity(self.examples);
        for _ in 0..self.examples {
            // Find a support on which the witness has enough mass to
            // realize the requested margin with a unit-norm example.
            let mut tries = 0;
            let (support, witness_mass) = loop {
                let support = sample_support(&mut rng, dim, nnz);
                let mass: f64 = support.iter().map(|i| w[*i] * w[*i]).sum::<f64>().sqrt();
                if mass > self.margin {
                    break (support, mass);
                }
                tries += 1;
                if tries > 1000 {
                    return Err(Error::usage(format!(
                        "margin {} unreachable with {nnz} nonzeros in dimension {dim}",
                        self.margin
                    )));
                }
            };

            let side: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            // Unit decomposition x = side * a * u_hat + b * v_hat on the
            // support, with a >= margin / ||u_S|| so that the functional
            // margin side * <witness, x> = a * ||u_S|| clears `margin`.
            let a_min = self.margin / witness_mass;
            let a = if support.len() == 1 {
                1.0
            } else {
                a_min + (1.0 - a_min) * rng.gen_range(0.0..1.0)
            };
            let b = (1.0 - a * a).max(0.0).sqrt();

            let u_hat: Vec<f64> = support.iter().map(|i| w[*i] / witness_mass).collect();
            let v_hat = orthonormal_complement(&mut rng, &u_hat);
            let coords: Vec<f64> = u_hat
                .iter()
                .zip(&v_hat)
                .map(|(u, v)| side * a * u + b * v)
                .collect();

            let label = if rng.gen_bool(self.flip_prob) {
                flipped.push(true);
                -side
            } else {
                flipped.push(false);
                side
            };
            examples.push(Example {
                features: support.into_iter().zip(coords).collect(),
                label,
            });
        }

        Ok(SvmInstance {
            dataset: Dataset::new(examples, dim)?,
            witness,
            flipped,
        })
    }

    pub fn objective(&self) -> Result<Objective> {
        Objective::regularized_hinge(self.lambda, self.generate()?.dataset)
    }
}

/// Spec for a noisy quadratic with the optimum placed uniformly in a ball.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSpec {
    pub dim: usize,
    pub lambda: f64,
    pub optimum_radius: f64,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl QuadraticSpec {
    pub fn generate(&self) -> Result<Objective> {
        let optimum = place_optimum(self.dim, self.optimum_radius, self.seed)?;
        Objective::noisy_quadratic(self.lambda, optimum, self.noise_sigma)
    }
}

/// Spec for a noisy l1 objective with the optimum placed uniformly in a ball.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Spec {
    pub dim: usize,
    pub optimum_radius: f64,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl L1Spec {
    pub fn generate(&self) -> Result<Objective> {
        let optimum = place_optimum(self.dim, self.optimum_radius, self.seed)?;
        Objective::noisy_l1(optimum, self.noise_sigma)
    }
}

/// Any synthetic problem spec.
#[derive(Debug, Clone, PartialEq)]
pub enum SyntheticSpec {
    Svm(SvmSpec),
    Quadratic(QuadraticSpec),
    L1(L1Spec),
}

impl SyntheticSpec {
    pub fn generate(&self) -> Result<Objective> {
        match self {
            SyntheticSpec::Svm(spec) => spec.objective(),
            SyntheticSpec::Quadratic(spec) => spec.generate(),
            SyntheticSpec::L1(spec) => spec.generate(),
        }
    }
}

fn place_optimum(dim: usize, radius: f64, seed: u64) -> Result<Point> {
    if dim == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(Error::usage(format!(
            "optimum radius must be >= 0, got {radius}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let direction = random_unit_vector(&mut rng, dim);
    let r = radius * rng.gen_range(0.0..1.0f64).powf(1.0 / dim as f64);
    Ok(direction.scaled(r))
}

fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Point {
    loop {
        let coords: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = coords.iter().map(|z| z * z).sum::<f64>().sqrt();
        if norm > 0.0 {
            return Point::from(coords.iter().map(|z| z / norm).collect::<Vec<_>>());
        }
    }
}

/// `nnz` distinct sorted indices drawn uniformly from `0..dim`.
fn sample_support<R: Rng>(rng: &mut R, dim: usize, nnz: usize) -> Vec<usize> {
    if nnz == dim {
        return (0..dim).collect();
    }
    let mut picked = vec![false; dim];
    let mut support = Vec::with_capacity(nnz);
    while support.len() < nnz {
        let i = rng.gen_range(0..dim);
        if !picked[i] {
            picked[i] = true;
            support.push(i);
        }
    }
    support.sort_unstable();
    support
}

/// A unit vector orthogonal to `u_hat` (all-zero when the space is 1-D).
fn orthonormal_complement<R: Rng>(rng: &mut R, u_hat: &[f64]) -> Vec<f64> {
    let n = u_hat.len();
    if n == 1 {
        return vec![0.0];
    }
    loop {
        let z: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let along: f64 = z.iter().zip(u_hat).map(|(a, b)| a * b).sum();
        let perp: Vec<f64> = z.iter().zip(u_hat).map(|(a, b)| a - along * b).collect();
        let norm = perp.iter().map(|p| p * p).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return perp.iter().map(|p| p / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let spec = SvmSpec {
            dim: 8,
            examples: 40,
            nnz: Some(3),
            margin: 0.1,
            flip_prob: 0.2,
            lambda: 0.01,
            seed: 99,
        };
        assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        let quad = QuadraticSpec {
            dim: 3,
            lambda: 1.0,
            optimum_radius: 0.5,
            noise_sigma: 0.1,
            seed: 4,
        };
        assert_eq!(quad.generate().unwrap(), quad.generate().unwrap());
    }

    #[test]
    fn flipless_generation_respects_the_margin_certificate() {
        let spec = SvmSpec {
            dim: 5,
            examples: 200,
            nnz: None,
            margin: 0.5,
            flip_prob: 0.0,
            lambda: 0.1,
            seed: 3,
        };
        let inst = spec.generate().unwrap();
        for ex in inst.dataset.examples() {
            let functional = ex.label * ex.dot(&inst.witness);
            assert!(functional >= 0.5 - 1e-12, "margin violated: {functional}");
            assert!((ex.norm() - 1.0).abs() < 1e-12, "not on the unit sphere");
        }
        assert!(inst.flipped.iter().all(|f| !f));
    }

    #[test]
    fn sparse_examples_have_requested_support_size() {
        let spec = SvmSpec {
            dim: 30,
            examples: 50,
            nnz: Some(4),
            margin: 0.05,
            flip_prob: 0.1,
            lambda: 1e-4,
            seed: 12,
        };
        let inst = spec.generate().unwrap();
        for ex in inst.dataset.examples() {
            assert_eq!(ex.features.len(), 4);
        }
    }

    #[test]
    fn optimum_lands_inside_the_configured_ball() {
        for seed in 0..20 {
            let quad = QuadraticSpec {
                dim: 3,
                lambda: 1.0,
                optimum_radius: 0.7,
                noise_sigma: 0.0,
                seed,
            };
            let obj = quad.generate().unwrap();
            assert!(obj.optimum().unwrap().norm() <= 0.7 + 1e-12);
        }
    }

    #[test]
    fn impossible_margins_are_rejected() {
        let spec = SvmSpec {
            dim: 100,
            examples: 5,
            nnz: Some(1),
            margin: 0.9,
            flip_prob: 0.0,
            lambda: 0.1,
            seed: 0,
        };
        assert!(spec.generate().is_err());
        let bad = SvmSpec {
            dim: 4,
            examples: 5,
            nnz: Some(5),
            margin: 0.1,
            flip_prob: 0.0,
            lambda: 0.1,
            seed: 0,
        };
        assert!(bad.generate().is_err());
    }
}
