//! Objective functions and their stochastic subgradient oracles.
//!
//! Each objective exposes three views: the exact value, an exact
//! (deterministic) subgradient, and a seeded stochastic subgradient whose
//! expectation over the draw is a subgradient. The stochastic view is what
//! the optimizer consumes; the exact views exist for evaluation and for
//! auditing the oracle.
//!
//! The oracle model is: the random estimate satisfies `E[ghat] \in dF(w)`
//! and `E[||ghat||^2] <= G^2` for a fixed `G`. [`Objective::norm_bound`]
//! returns a documented closed-form `G` where one exists for the configured
//! domain, and [`Objective::stochastic_second_moment`] evaluates
//! `E[||ghat(w)||^2]` exactly at a point so the bound can be audited.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::dataset::Dataset;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::Point;

/// A convex objective with exact and stochastic first-order oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    /// `(lambda/2)||w||^2 + (1/m) sum_i max{0, 1 - y_i <x_i, w>}`.
    ///
    /// The stochastic subgradient draws one example uniformly at random:
    /// `lambda w - 1[y_i <x_i, w> <= 1] y_i x_i` (boundary included in the
    /// indicator). Strongly convex with parameter `lambda`.
    RegularizedHinge { lambda: f64, data: Dataset },
    /// `(lambda/2)||w - optimum||^2` with isotropic oracle noise.
    ///
    /// The stochastic subgradient is the exact gradient plus a noise vector
    /// of fixed magnitude `noise_sigma` in a uniformly random direction.
    NoisyQuadratic {
        lambda: f64,
        optimum: Point,
        noise_sigma: f64,
    },
    /// `||w - optimum||_1`, convex but not strongly convex and non-smooth at
    /// every kink; same noise model as the quadratic.
    NoisyL1 { optimum: Point, noise_sigma: f64 },
}

/// One answer from the stochastic oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleDraw {
    pub subgradient: Point,
    /// What randomness produced the draw, for reproducibility audits.
    pub aux: OracleAux,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleAux {
    /// The oracle was deterministic at this point.
    None,
    /// Index of the training example the subgradient was computed from.
    ExampleIndex(usize),
    /// The additive noise vector.
    Noise(Point),
}

impl Objective {
    pub fn regularized_hinge(lambda: f64, data: Dataset) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::usage(format!(
                "hinge regularization must be >= 0, got {lambda}"
            )));
        }
        Ok(Objective::RegularizedHinge { lambda, data })
    }

    pub fn noisy_quadratic(lambda: f64, optimum: Point, noise_sigma: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::usage(format!(
                "quadratic curvature must be > 0, got {lambda}"
            )));
        }
        check_sigma(noise_sigma)?;
        Ok(Objective::NoisyQuadratic {
            lambda,
            optimum,
            noise_sigma,
        })
    }

    pub fn noisy_l1(optimum: Point, noise_sigma: f64) -> Result<Self> {
        check_sigma(noise_sigma)?;
        Ok(Objective::NoisyL1 {
            optimum,
            noise_sigma,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Objective::RegularizedHinge { data, .. } => data.dim(),
            Objective::NoisyQuadratic { optimum, .. } | Objective::NoisyL1 { optimum, .. } => {
                optimum.dim()
            }
        }
    }

    /// Strong convexity parameter (0 for merely convex objectives).
    pub fn strong_convexity(&self) -> f64 {
        match self {
            Objective::RegularizedHinge { lambda, .. } => *lambda,
            Objective::NoisyQuadratic { lambda, .. } => *lambda,
            Objective::NoisyL1 { .. } => 0.0,
        }
    }

    /// The minimizer, when known in closed form.
    pub fn optimum(&self) -> Option<&Point> {
        match self {
            Objective::RegularizedHinge { .. } => None,
            Objective::NoisyQuadratic { optimum, .. } | Objective::NoisyL1 { optimum, .. } => {
                Some(optimum)
            }
        }
    }

    /// The optimal value, when known in closed form.
    pub fn optimal_value(&self) -> Option<f64> {
        self.optimum().map(|_| 0.0)
    }

    /// Exact objective value. Deterministic; noise affects only the oracle.
    pub fn value(&self, w: &Point) -> Result<f64> {
        w.check_dim(self.dim())?;
        Ok(match self {
            Objective::RegularizedHinge { lambda, data } => {
                let hinge: f64 = data
                    .examples()
                    .iter()
                    .map(|ex| (1.0 - ex.label * ex.dot(w)).max(0.0))
                    .sum();
                lambda / 2.0 * w.norm_sq() + hinge / data.len() as f64
            }
            Objective::NoisyQuadratic {
                lambda, optimum, ..
            } => lambda / 2.0 * w.dist_sq(optimum),
            Objective::NoisyL1 { optimum, .. } => w
                .as_slice()
                .iter()
                .zip(optimum.as_slice())
                .map(|(a, b)| (a - b).abs())
                .sum(),
        })
    }

    /// A member of the exact subdifferential at `w`.
    pub fn full_subgradient(&self, w: &Point) -> Result<Point> {
        w.check_dim(self.dim())?;
        Ok(match self {
            Objective::RegularizedHinge { lambda, data } => {
                let mut g = w.scaled(*lambda);
                let inv_m = 1.0 / data.len() as f64;
                for ex in data.examples() {
                    if ex.label * ex.dot(w) <= 1.0 {
                        let coeff = -ex.label * inv_m;
                        let gs = g.coords_mut();
                        for (i, v) in &ex.features {
                            gs[*i] += coeff * v;
                        }
                    }
                }
                g
            }
            Objective::NoisyQuadratic {
                lambda, optimum, ..
            } => {
                let mut g = w.clone();
                g.add_scaled(-1.0, optimum);
                g.scale(*lambda);
                g
            }
            Objective::NoisyL1 { optimum, .. } => Point::from(
                w.as_slice()
                    .iter()
                    .zip(optimum.as_slice())
                    .map(|(a, b)| sign(a - b))
                    .collect::<Vec<_>>(),
            ),
        })
    }

    /// Draws a stochastic subgradient; `E` over the draw lies in `dF(w)`.
    pub fn stochastic_subgradient<R: Rng>(&self, w: &Point, rng: &mut R) -> Result<OracleDraw> {
        w.check_dim(self.dim())?;
        let mut out = Point::zeros(self.dim());
        let mut noise = Vec::new();
        let aux = self.draw_into(w, rng, &mut out, &mut noise);
        let aux = match aux {
            RawAux::Example(i) => OracleAux::ExampleIndex(i),
            RawAux::Noise => OracleAux::Noise(Point::from(noise)),
            RawAux::None => OracleAux::None,
        };
        Ok(OracleDraw {
            subgradient: out,
            aux,
        })
    }

    /// Allocation-free oracle draw for the inner loop. `noise_buf` is scratch
    /// reused across calls. The sampling order is identical to
    /// [`stochastic_subgradient`], so both consume the RNG stream the same way.
    pub(crate) fn draw_into<R: Rng>(
        &self,
        w: &Point,
        rng: &mut R,
        out: &mut Point,
        noise_buf: &mut Vec<f64>,
    ) -> RawAux {
        match self {
            Objective::RegularizedHinge { lambda, data } => {
                let i = rng.gen_range(0..data.len());
                let ex = &data.examples()[i];
                out.clone_from(w);
                out.scale(*lambda);
                if ex.label * ex.dot(w) <= 1.0 {
                    let gs = out.coords_mut();
                    for (j, v) in &ex.features {
                        gs[*j] -= ex.label * v;
                    }
                }
                RawAux::Example(i)
            }
            Objective::NoisyQuadratic { noise_sigma, .. }
            | Objective::NoisyL1 { noise_sigma, .. } => {
                *out = self
                    .full_subgradient(w)
                    .expect("dimension already checked");
                if *noise_sigma > 0.0 {
                    sample_fixed_magnitude_noise(rng, self.dim(), *noise_sigma, noise_buf);
                    let gs = out.coords_mut();
                    for (g, n) in gs.iter_mut().zip(noise_buf.iter()) {
                        *g += n;
                    }
                    RawAux::Noise
                } else {
                    RawAux::None
                }
            }
        }
    }

    /// Exact `E[||ghat(w)||^2]` over the oracle's randomness at `w`.
    pub fn stochastic_second_moment(&self, w: &Point) -> Result<f64> {
        w.check_dim(self.dim())?;
        Ok(match self {
            Objective::RegularizedHinge { lambda, data } => {
                let reg = w.scaled(*lambda);
                let mut total = 0.0;
                for ex in data.examples() {
                    if ex.label * ex.dot(w) <= 1.0 {
                        // ||reg - y x||^2 expanded against the sparse x.
                        let mut cross = 0.0;
                        let rs = reg.as_slice();
                        for (i, v) in &ex.features {
                            cross += rs[*i] * v;
                        }
                        total += reg.norm_sq() - 2.0 * ex.label * cross + ex.norm().powi(2);
                    } else {
                        total += reg.norm_sq();
                    }
                }
                total / data.len() as f64
            }
            // The noise has fixed magnitude sigma and zero mean, so the
            // cross term vanishes and the contribution is exactly sigma^2.
            Objective::NoisyQuadratic { noise_sigma, .. }
            | Objective::NoisyL1 { noise_sigma, .. } => {
                self.full_subgradient(w)?.norm_sq() + noise_sigma * noise_sigma
            }
        })
    }

    /// A documented, conservative `G` with `E[||ghat||^2] <= G^2` over the
    /// domain, when one exists in closed form:
    ///
    /// * quadratic: `sqrt((lambda * diam)^2 + sigma^2)`, requiring a bounded
    ///   domain containing the optimum;
    /// * l1: `sqrt(d + sigma^2)` on any domain;
    /// * hinge: `lambda * sup||w|| + max_i ||x_i||`, requiring a bounded
    ///   domain.
    pub fn norm_bound(&self, domain: &Domain) -> Result<f64> {
        let unavailable = || Error::NormBoundUnavailable {
            objective: self.describe().to_string(),
            domain: domain.describe().to_string(),
        };
        match self {
            Objective::RegularizedHinge { lambda, data } => {
                let sup = domain.sup_norm();
                if !sup.is_finite() {
                    return Err(unavailable());
                }
                Ok(lambda * sup + data.max_example_norm())
            }
            Objective::NoisyQuadratic {
                lambda,
                optimum,
                noise_sigma,
            } => {
                let diam = domain.diameter();
                if !diam.is_finite() || !domain.contains(optimum, 1e-12) {
                    return Err(unavailable());
                }
                Ok(((lambda * diam).powi(2) + noise_sigma * noise_sigma).sqrt())
            }
            Objective::NoisyL1 { noise_sigma, .. } => {
                Ok((self.dim() as f64 + noise_sigma * noise_sigma).sqrt())
            }
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Objective::RegularizedHinge { .. } => "regularized hinge",
            Objective::NoisyQuadratic { .. } => "noisy quadratic",
            Objective::NoisyL1 { .. } => "noisy l1",
        }
    }
}

pub(crate) enum RawAux {
    None,
    Example(usize),
    Noise,
}

fn check_sigma(noise_sigma: f64) -> Result<()> {
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::usage(format!(
            "noise magnitude must be >= 0, got {noise_sigma}"
        )));
    }
    Ok(())
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Fills `buf` with `sigma * u/||u||` for a standard-normal `u`: a vector of
/// exactly `sigma` magnitude in a uniformly random direction.
fn sample_fixed_magnitude_noise<R: Rng>(rng: &mut R, dim: usize, sigma: f64, buf: &mut Vec<f64>) {
    loop {
        buf.clear();
        buf.extend((0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)));
        let norm = buf.iter().map(|z| z * z).sum::<f64>().sqrt();
        if norm > 0.0 {
            let scale = sigma / norm;
            for z in buf.iter_mut() {
                *z *= scale;
            }
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::parse_svmlight;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one_example_hinge(lambda: f64) -> Objective {
        // Single example x = (1, 0), y = +1 over dimension 2.
        let data = parse_svmlight_dim2("+1 1:1\n");
        Objective::regularized_hinge(lambda, data).unwrap()
    }

    fn parse_svmlight_dim2(text: &str) -> Dataset {
        crate::dataset::parse_svmlight_with_dim(text, Some(2)).unwrap()
    }

    #[test]
    fn hinge_value_at_origin_is_one() {
        let data = parse_svmlight("+1 1:0.5 3:-2\n-1 2:1\n").unwrap();
        let obj = Objective::regularized_hinge(0.25, data).unwrap();
        let w = Point::zeros(3);
        assert_eq!(obj.value(&w).unwrap(), 1.0);
    }

    #[test]
    fn hinge_value_zero_past_the_margin() {
        let obj = one_example_hinge(0.0);
        assert_eq!(obj.value(&Point::from(vec![2.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn hinge_subgradient_at_origin() {
        let obj = one_example_hinge(0.1);
        let g = obj.full_subgradient(&Point::zeros(2)).unwrap();
        assert_eq!(g.as_slice(), &[-1.0, 0.0]);
    }

    #[test]
    fn hinge_indicator_includes_boundary() {
        // Margin exactly 1: the example is active.
        let obj = one_example_hinge(0.0);
        let g = obj.full_subgradient(&Point::from(vec![1.0, 0.0])).unwrap();
        assert_eq!(g.as_slice(), &[-1.0, 0.0]);
        // Margin strictly above 1: inactive.
        let g = obj
            .full_subgradient(&Point::from(vec![1.0 + 1e-12, 0.0]))
            .unwrap();
        assert_eq!(g.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn quadratic_value_and_gradient() {
        let obj = Objective::noisy_quadratic(2.0, Point::from(vec![1.0, -1.0]), 0.0).unwrap();
        assert_eq!(obj.value(&Point::from(vec![1.0, -1.0])).unwrap(), 0.0);
        let obj = Objective::noisy_quadratic(1.0, Point::zeros(2), 0.0).unwrap();
        let g = obj.full_subgradient(&Point::from(vec![2.0, -2.0])).unwrap();
        assert_eq!(g.as_slice(), &[2.0, -2.0]);
    }

    #[test]
    fn l1_subgradient_uses_zero_at_kinks() {
        let obj = Objective::noisy_l1(Point::zeros(3), 0.0).unwrap();
        let g = obj
            .full_subgradient(&Point::from(vec![0.5, 0.0, -3.0]))
            .unwrap();
        assert_eq!(g.as_slice(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn noiseless_stochastic_draw_is_exact_gradient() {
        let obj = Objective::noisy_quadratic(1.0, Point::zeros(2), 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let draw = obj
            .stochastic_subgradient(&Point::from(vec![1.0, 1.0]), &mut rng)
            .unwrap();
        assert_eq!(draw.subgradient.as_slice(), &[1.0, 1.0]);
        assert_eq!(draw.aux, OracleAux::None);
    }

    #[test]
    fn hinge_draw_off_margin_is_pure_regularizer() {
        // Margin y<x,w> = 3 > 1: indicator off, draw returns lambda * w.
        let obj = one_example_hinge(0.5);
        let w = Point::from(vec![3.0, 4.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draw = obj.stochastic_subgradient(&w, &mut rng).unwrap();
        assert_eq!(draw.subgradient.as_slice(), &[1.5, 2.0]);
        assert_eq!(draw.aux, OracleAux::ExampleIndex(0));
    }

    #[test]
    fn enumerated_draws_average_to_full_subgradient() {
        let data = parse_svmlight("+1 1:0.5 3:-2\n-1 2:1\n+1 2:0.25 3:1\n").unwrap();
        let obj = Objective::regularized_hinge(0.3, data.clone()).unwrap();
        let w = Point::from(vec![0.2, -0.4, 0.6]);
        // Independent enumeration: average the per-example formula directly.
        let mut mean = w.scaled(0.3);
        for ex in data.examples() {
            if ex.label * ex.dot(&w) <= 1.0 {
                let coeff = -ex.label / data.len() as f64;
                let gs = mean.coords_mut();
                for (i, v) in &ex.features {
                    gs[*i] += coeff * v;
                }
            }
        }
        let full = obj.full_subgradient(&w).unwrap();
        for (a, b) in mean.as_slice().iter().zip(full.as_slice()) {
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn noise_has_exactly_sigma_magnitude() {
        let obj = Objective::noisy_l1(Point::zeros(4), 0.7).unwrap();
        let w = Point::from(vec![1.0, -1.0, 0.0, 2.0]);
        let g = obj.full_subgradient(&w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let draw = obj.stochastic_subgradient(&w, &mut rng).unwrap();
            let OracleAux::Noise(noise) = &draw.aux else {
                panic!("expected noise aux");
            };
            assert!((noise.norm() - 0.7).abs() < 1e-12);
            let mut recomposed = g.clone();
            recomposed.add_scaled(1.0, noise);
            assert_eq!(recomposed, draw.subgradient);
        }
    }

    #[test]
    fn second_moment_matches_enumeration_for_hinge() {
        let data = parse_svmlight("+1 1:0.5 3:-2\n-1 2:1\n+1 2:0.25 3:1\n").unwrap();
        let obj = Objective::regularized_hinge(0.3, data.clone()).unwrap();
        let w = Point::from(vec![0.2, -0.4, 0.6]);
        let mut brute = 0.0;
        for ex in data.examples() {
            let mut g = w.scaled(0.3);
            if ex.label * ex.dot(&w) <= 1.0 {
                let gs = g.coords_mut();
                for (i, v) in &ex.features {
                    gs[*i] -= ex.label * v;
                }
            }
            brute += g.norm_sq();
        }
        brute /= data.len() as f64;
        let fast = obj.stochastic_second_moment(&w).unwrap();
        assert!((brute - fast).abs() < 1e-12, "{brute} vs {fast}");
    }

    #[test]
    fn norm_bounds_match_documented_forms() {
        // Quadratic on the unit ball with the optimum at the center.
        let obj = Objective::noisy_quadratic(1.0, Point::zeros(2), 0.0).unwrap();
        let ball = Domain::centered_ball(2, 1.0).unwrap();
        assert_eq!(obj.norm_bound(&ball).unwrap(), 2.0);
        // l1 in dimension 4 without noise.
        let obj = Objective::noisy_l1(Point::zeros(4), 0.0).unwrap();
        assert_eq!(obj.norm_bound(&Domain::Unbounded).unwrap(), 2.0);
        // Hinge: lambda * R + max example norm.
        let data = parse_svmlight("+1 1:1\n-1 2:1\n").unwrap();
        let obj = Objective::regularized_hinge(0.01, data).unwrap();
        let ball = Domain::centered_ball(2, 10.0).unwrap();
        assert!((obj.norm_bound(&ball).unwrap() - 1.1).abs() < 1e-15);
    }

    #[test]
    fn norm_bound_unavailable_cases() {
        let data = parse_svmlight("+1 1:1\n").unwrap();
        let obj = Objective::regularized_hinge(0.1, data).unwrap();
        let err = obj.norm_bound(&Domain::Unbounded).unwrap_err();
        assert!(err.to_string().contains("supply G in config"), "{err}");

        let obj = Objective::noisy_quadratic(1.0, Point::zeros(2), 0.0).unwrap();
        assert!(obj.norm_bound(&Domain::Unbounded).is_err());
        // Optimum outside the domain: the diameter argument does not apply.
        let far = Objective::noisy_quadratic(1.0, Point::from(vec![5.0, 0.0]), 0.0).unwrap();
        assert!(far
            .norm_bound(&Domain::centered_ball(2, 1.0).unwrap())
            .is_err());
    }

    #[test]
    fn norm_bound_is_valid_over_sampled_domain_points() {
        // Max over sampled feasible points of the exact per-point second
        // moment must stay within G^2.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let ball = Domain::centered_ball(3, 1.0).unwrap();
        let objectives = vec![
            Objective::noisy_quadratic(1.5, Point::from(vec![0.3, -0.2, 0.1]), 0.5).unwrap(),
            Objective::noisy_l1(Point::from(vec![0.3, -0.2, 0.1]), 0.5).unwrap(),
            Objective::regularized_hinge(
                0.2,
                parse_svmlight("+1 1:0.5 3:-2\n-1 2:1\n").unwrap(),
            )
            .unwrap(),
        ];
        for obj in objectives {
            let g = obj.norm_bound(&ball).unwrap();
            let mut worst = 0.0f64;
            for _ in 0..100_000 {
                let raw = Point::from(
                    (0..3)
                        .map(|_| rng.gen_range(-1.5..1.5))
                        .collect::<Vec<f64>>(),
                );
                let w = ball.project(&raw);
                worst = worst.max(obj.stochastic_second_moment(&w).unwrap());
            }
            assert!(
                worst <= g * g + 1e-12,
                "{}: E||ghat||^2 reached {worst}, G^2 = {}",
                obj.describe(),
                g * g
            );
        }
    }

    #[test]
    fn strong_convexity_inequality_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let data = parse_svmlight("+1 1:0.5 3:-2\n-1 2:1\n+1 2:0.25 3:1\n").unwrap();
        let objectives = vec![
            Objective::regularized_hinge(0.7, data).unwrap(),
            Objective::noisy_quadratic(2.0, Point::from(vec![0.5, 0.0, -0.5]), 0.3).unwrap(),
            Objective::noisy_l1(Point::from(vec![0.5, 0.0, -0.5]), 0.3).unwrap(),
        ];
        for obj in objectives {
            let lambda = obj.strong_convexity();
            for _ in 0..100 {
                let sample = |rng: &mut ChaCha8Rng| {
                    Point::from((0..3).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<f64>>())
                };
                let (w, w2) = (sample(&mut rng), sample(&mut rng));
                let g = obj.full_subgradient(&w).unwrap();
                let mut delta = w2.clone();
                delta.add_scaled(-1.0, &w);
                let lhs = obj.value(&w2).unwrap();
                let rhs = obj.value(&w).unwrap()
                    + g.dot(&delta)
                    + lambda / 2.0 * delta.norm_sq();
                assert!(
                    lhs >= rhs - 1e-9,
                    "{}: {lhs} < {rhs}",
                    obj.describe()
                );
            }
        }
    }
}
