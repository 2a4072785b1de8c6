//! The projected stochastic subgradient descent loop.
//!
//! One run starts at the origin and repeats, for `t = 1..=T`: draw a
//! stochastic subgradient at the current iterate, hand the iterate to every
//! attached averaging scheme, then take the projected step
//! `w <- project(w - eta_t * ghat)`. At each record point the run snapshots
//! every scheme's current candidate and its suboptimality.
//!
//! Runs are deterministic given their seed, and distinct repetitions derive
//! their seeds from a master seed through [`mix_seed`], so a repetition's
//! result does not depend on whether other repetitions run before, after or
//! concurrently with it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::averaging::{Averager, SchemeSpec};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::point::Point;
use crate::schedule::StepSchedule;

/// Derives the seed of repetition `index` from the master seed.
///
/// This is the splitmix64 generator: the master seed is advanced by
/// `index + 1` increments of the golden-ratio constant and passed through
/// the splitmix64 finalizer. Pinned as part of the output format so runs
/// are reproducible regardless of how repetitions are scheduled.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The default record grid: a geometric progression of factor 1.25
/// (deduplicated), always including 1 and `t_max`.
pub fn default_record_grid(t_max: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut x = 1.0f64;
    while x <= t_max as f64 {
        let t = x.floor() as usize;
        if grid.last() != Some(&t) {
            grid.push(t);
        }
        x *= 1.25;
    }
    if grid.last() != Some(&t_max) {
        grid.push(t_max);
    }
    grid
}

/// Everything a single run needs besides the objective and the schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    iterations: usize,
    seed: u64,
    schedule: StepSchedule,
    domain: Domain,
    record_points: Vec<usize>,
    start: Option<Point>,
}

impl RunConfig {
    /// `record_points` may be given in any order; they are sorted and
    /// deduplicated. `None` selects the default geometric grid.
    pub fn new(
        iterations: usize,
        seed: u64,
        schedule: StepSchedule,
        domain: Domain,
        record_points: Option<Vec<usize>>,
    ) -> Result<Self> {
        if iterations < 2 {
            return Err(Error::usage(format!(
                "iteration budget must be at least 2, got {iterations}"
            )));
        }
        schedule.validate()?;
        let mut points = record_points.unwrap_or_else(|| default_record_grid(iterations));
        points.sort_unstable();
        points.dedup();
        if points.is_empty() {
            return Err(Error::usage("record grid must be nonempty"));
        }
        if points[0] < 1 || *points.last().unwrap() > iterations {
            return Err(Error::usage(format!(
                "record points must lie in [1, {iterations}]"
            )));
        }
        Ok(RunConfig {
            iterations,
            seed,
            schedule,
            domain,
            record_points: points,
            start: None,
        })
    }

    /// Overrides the zero-vector start. Presets never use this.
    pub fn with_start(mut self, start: Point) -> Self {
        self.start = Some(start);
        self
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn schedule(&self) -> &StepSchedule {
        &self.schedule
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn record_points(&self) -> &[usize] {
        &self.record_points
    }
}

/// Snapshots of one run at its record points, plus the final candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub record_points: Vec<usize>,
    pub schemes: Vec<SchemeSpec>,
    /// `suboptimality[p][s]`: objective value of scheme `s`'s candidate at
    /// record point `p`, minus the reference optimum.
    pub suboptimality: Vec<Vec<f64>>,
    /// `candidates[p][s]`: the candidate points themselves.
    pub candidates: Vec<Vec<Point>>,
    /// `||w_t - w*||^2` at each record point, when the optimum is known.
    pub dist_sq: Option<Vec<f64>>,
    /// Final candidate of each scheme after all `T` iterates.
    pub finals: Vec<Point>,
}

/// One projected subgradient step: `project(w - eta * ghat)`.
pub fn sgd_step(w: &Point, g_hat: &Point, eta: f64, domain: &Domain) -> Point {
    let mut next = w.clone();
    next.add_scaled(-eta, g_hat);
    domain.project_in_place(&mut next);
    next
}

/// Runs SGD for `config.iterations()` rounds, feeding every scheme observer
/// each iterate before the update, and snapshotting candidates and their
/// suboptimality (`F(candidate) - f_ref`) at each record point.
///
/// A suffix scheme is horizon-dependent, so it is materialized as one
/// observer per record point, each treating its record point as the horizon;
/// the snapshot at record point `t` is then exactly the suffix average of a
/// run that stops at `t`, consistent with how the other schemes' snapshots
/// read.
pub fn run_sgd(
    objective: &Objective,
    config: &RunConfig,
    schemes: &[SchemeSpec],
    f_ref: f64,
) -> Result<RunRecord> {
    if schemes.is_empty() {
        return Err(Error::usage("at least one scheme must be attached"));
    }
    let dim = objective.dim();
    config.domain.check_dim(dim)?;

    let mut observers = Vec::with_capacity(schemes.len());
    for spec in schemes {
        spec.validate()?;
        observers.push(SchemeObserver::new(spec, config)?);
    }

    let mut w = match &config.start {
        Some(start) => {
            start.check_dim(dim)?;
            if !start.is_finite() {
                return Err(Error::usage("start point must be finite"));
            }
            config.domain.project(start)
        }
        None => config.domain.project(&Point::zeros(dim)),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut g_hat = Point::zeros(dim);
    let mut noise_buf = Vec::new();

    let points = &config.record_points;
    let mut next_record = 0usize;
    let mut suboptimality = Vec::with_capacity(points.len());
    let mut candidates = Vec::with_capacity(points.len());
    let mut dist_sq = objective.optimum().map(|_| Vec::with_capacity(points.len()));

    for t in 1..=config.iterations {
        objective.draw_into(&w, &mut rng, &mut g_hat, &mut noise_buf);
        for obs in &mut observers {
            obs.observe(t, &w)?;
        }
        if next_record < points.len() && points[next_record] == t {
            next_record += 1;
            let mut row_sub = Vec::with_capacity(observers.len());
            let mut row_cand = Vec::with_capacity(observers.len());
            for obs in &observers {
                let cand = obs.candidate_at(t)?;
                if !cand.is_finite() {
                    return Err(Error::usage(format!(
                        "non-finite candidate for scheme {} at t={t}",
                        obs.spec.label()
                    )));
                }
                row_sub.push(objective.value(&cand)? - f_ref);
                row_cand.push(cand);
            }
            suboptimality.push(row_sub);
            candidates.push(row_cand);
            if let (Some(ds), Some(opt)) = (dist_sq.as_mut(), objective.optimum()) {
                ds.push(w.dist_sq(opt));
            }
        }
        let eta = config.schedule.step_size(t);
        w.add_scaled(-eta, &g_hat);
        config.domain.project_in_place(&mut w);
        if !w.is_finite() {
            return Err(Error::usage(format!("iterate diverged to non-finite at t={t}")));
        }
    }

    let finals = candidates
        .last()
        .cloned()
        .expect("record grid always contains the final round");
    Ok(RunRecord {
        record_points: points.clone(),
        schemes: schemes.to_vec(),
        suboptimality,
        candidates,
        dist_sq,
        finals,
    })
}

/// A reference optimal value to measure suboptimality against.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceOptimum {
    /// The value used as `F(w*)` in suboptimality computations.
    pub value: f64,
    /// How far `value` may sit above the true optimum. Recorded
    /// suboptimalities can undershoot zero by at most this much. `None`
    /// when no oracle constant is available to quantify it.
    pub tolerance: Option<f64>,
}

/// Computes the reference optimum for an objective.
///
/// Objectives with a known minimizer have `F(w*) = 0` exactly. For the
/// hinge objective the reference is computed once per experiment by
/// deterministic full-subgradient descent with steps `1/(lambda t)`,
/// returning the poly-decay (eta = 3) average of the trajectory. When a
/// valid `G` is known, the gap to the true optimum is bounded by the
/// strongly convex final-iterate bound at `steps`, which is stored as the
/// tolerance.
pub fn reference_optimum(
    objective: &Objective,
    domain: &Domain,
    steps: usize,
    g: Option<f64>,
) -> Result<ReferenceOptimum> {
    if let Some(value) = objective.optimal_value() {
        return Ok(ReferenceOptimum {
            value,
            tolerance: Some(0.0),
        });
    }
    let lambda = objective.strong_convexity();
    if lambda <= 0.0 {
        return Err(Error::usage(
            "reference optimum needs a strongly convex objective (lambda > 0)",
        ));
    }
    if steps < 2 {
        return Err(Error::usage("reference descent needs at least 2 steps"));
    }
    let dim = objective.dim();
    domain.check_dim(dim)?;
    let schedule = StepSchedule::StronglyConvex { lambda };
    let mut w = domain.project(&Point::zeros(dim));
    let mut avg = Averager::poly_decay(3.0)?;
    for t in 1..=steps {
        avg.observe(&w)?;
        let g_full = objective.full_subgradient(&w)?;
        w.add_scaled(-schedule.step_size(t), &g_full);
        domain.project_in_place(&mut w);
        if !w.is_finite() {
            return Err(Error::usage(format!(
                "reference descent diverged to non-finite at t={t}"
            )));
        }
    }
    let value = objective.value(&avg.candidate()?)?;
    let tolerance = match g {
        Some(g) => Some(crate::analysis::theoretical_bound(
            crate::analysis::BoundKind::LastStronglyConvex,
            &crate::analysis::BoundParams {
                g: Some(g),
                lambda: Some(lambda),
                ..Default::default()
            },
            steps,
        )?),
        None => None,
    };
    Ok(ReferenceOptimum { value, tolerance })
}

/// An attached scheme plus the state needed to answer "what would this
/// scheme return if the run stopped now".
struct SchemeObserver {
    spec: SchemeSpec,
    kind: ObserverKind,
}

enum ObserverKind {
    Simple(Averager),
    /// One suffix averager per record point, keyed by its horizon.
    SuffixFamily(Vec<(usize, Averager)>),
}

impl SchemeObserver {
    fn new(spec: &SchemeSpec, config: &RunConfig) -> Result<Self> {
        let kind = match spec {
            SchemeSpec::Suffix { alpha } => {
                let family = config
                    .record_points
                    .iter()
                    .map(|&horizon| Averager::suffix(*alpha, horizon).map(|a| (horizon, a)))
                    .collect::<Result<Vec<_>>>()?;
                ObserverKind::SuffixFamily(family)
            }
            other => ObserverKind::Simple(Averager::for_scheme(other, config.iterations)?),
        };
        Ok(SchemeObserver {
            spec: spec.clone(),
            kind,
        })
    }

    fn observe(&mut self, t: usize, w: &Point) -> Result<()> {
        match &mut self.kind {
            ObserverKind::Simple(avg) => avg.observe(w),
            ObserverKind::SuffixFamily(family) => {
                for (horizon, avg) in family.iter_mut() {
                    if t <= *horizon {
                        avg.observe(w)?;
                    }
                }
                Ok(())
            }
        }
    }

    fn candidate_at(&self, t: usize) -> Result<Point> {
        match &self.kind {
            ObserverKind::Simple(avg) => avg.candidate(),
            ObserverKind::SuffixFamily(family) => {
                let (_, avg) = family
                    .iter()
                    .find(|(horizon, _)| *horizon == t)
                    .expect("snapshots are only taken at record points");
                avg.candidate()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(lambda: f64, optimum: Vec<f64>, sigma: f64) -> Objective {
        Objective::noisy_quadratic(lambda, Point::from(optimum), sigma).unwrap()
    }

    fn all_schemes() -> Vec<SchemeSpec> {
        vec![
            SchemeSpec::Last,
            SchemeSpec::Uniform,
            SchemeSpec::Suffix { alpha: 0.5 },
            SchemeSpec::PolyDecay { eta: 3.0 },
        ]
    }

    #[test]
    fn mix_seed_is_stable_and_spreads() {
        // Frozen values: these are part of the reproducibility contract.
        assert_eq!(mix_seed(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_ne!(mix_seed(42, 0), mix_seed(42, 1));
        assert_ne!(mix_seed(42, 0), mix_seed(43, 0));
    }

    #[test]
    fn default_grid_is_geometric_and_capped() {
        let grid = default_record_grid(100);
        assert_eq!(grid.first(), Some(&1));
        assert_eq!(grid.last(), Some(&100));
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid.contains(&2) && grid.contains(&3));
        assert!(grid.len() < 30);
    }

    #[test]
    fn started_at_the_optimum_stays_there() {
        let obj = quad(1.0, vec![0.0, 0.0], 0.0);
        let cfg = RunConfig::new(
            50,
            0,
            StepSchedule::StronglyConvex { lambda: 1.0 },
            Domain::Unbounded,
            None,
        )
        .unwrap();
        let rec = run_sgd(&obj, &cfg, &all_schemes(), 0.0).unwrap();
        for row in &rec.suboptimality {
            for v in row {
                assert_eq!(*v, 0.0);
            }
        }
        assert!(rec.finals.iter().all(|p| p.as_slice() == [0.0, 0.0]));
    }

    #[test]
    fn first_step_lands_exactly_on_the_optimum() {
        // eta_1 = 1/lambda cancels the curvature: w_2 = w* exactly.
        let obj = quad(1.0, vec![1.0, 0.0], 0.0);
        let cfg = RunConfig::new(
            2,
            0,
            StepSchedule::StronglyConvex { lambda: 1.0 },
            Domain::Unbounded,
            Some(vec![1, 2]),
        )
        .unwrap();
        let rec = run_sgd(&obj, &cfg, &[SchemeSpec::Last], 0.0).unwrap();
        assert_eq!(rec.candidates[1][0].as_slice(), &[1.0, 0.0]);
        assert_eq!(rec.suboptimality[1][0], 0.0);
        assert_eq!(rec.suboptimality[0][0], 0.5); // F(0) - 0 = lambda/2 * 1
    }

    #[test]
    fn sgd_step_cases() {
        let w = Point::from(vec![1.0, 1.0]);
        let g = Point::from(vec![1.0, 0.0]);
        let next = sgd_step(&w, &g, 0.5, &Domain::Unbounded);
        assert_eq!(next.as_slice(), &[0.5, 1.0]);

        // Zero step is projection of the current point.
        let ball = Domain::centered_ball(2, 1.0).unwrap();
        let outside = Point::from(vec![3.0, 4.0]);
        assert_eq!(
            sgd_step(&outside, &g, 0.0, &ball),
            ball.project(&outside)
        );

        // A step that exits the ball is pulled back radially.
        let w = Point::from(vec![1.0, 0.0]);
        let g = Point::from(vec![-2.0, 0.0]);
        let next = sgd_step(&w, &g, 1.0, &ball);
        assert_eq!(next.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn identical_seeds_give_bitwise_identical_records() {
        let obj = quad(1.0, vec![0.5, -0.25], 0.5);
        let ball = Domain::centered_ball(2, 1.0).unwrap();
        let cfg = RunConfig::new(
            500,
            42,
            StepSchedule::StronglyConvex { lambda: 1.0 },
            ball,
            None,
        )
        .unwrap();
        let a = run_sgd(&obj, &cfg, &all_schemes(), 0.0).unwrap();
        let b = run_sgd(&obj, &cfg, &all_schemes(), 0.0).unwrap();
        assert_eq!(a, b);
        let c = run_sgd(&obj, &cfg.clone().with_seed(43), &all_schemes(), 0.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn iterates_stay_feasible() {
        let obj = quad(1.0, vec![0.5, 0.0], 0.5);
        let ball = Domain::centered_ball(2, 1.0).unwrap();
        let cfg = RunConfig::new(
            300,
            7,
            StepSchedule::StronglyConvex { lambda: 1.0 },
            ball.clone(),
            None,
        )
        .unwrap();
        let rec = run_sgd(&obj, &cfg, &all_schemes(), 0.0).unwrap();
        for row in &rec.candidates {
            for cand in row {
                assert!(ball.contains(cand, 1e-9));
            }
        }
    }

    #[test]
    fn suffix_snapshot_matches_a_shorter_run() {
        // The suffix value recorded at t must equal the final suffix value
        // of an independent run with horizon t and the same seed.
        let obj = quad(1.0, vec![0.5, -0.25], 0.5);
        let schemes = [SchemeSpec::Suffix { alpha: 0.5 }];
        let long = RunConfig::new(
            64,
            11,
            StepSchedule::StronglyConvex { lambda: 1.0 },
            Domain::Unbounded,
            Some(vec![16, 64]),
        )
        .unwrap();
        let long_rec = run_sgd(&obj, &long, &schemes, 0.0).unwrap();
        let short = RunConfig::new(
            16,
            11,
            StepSchedule::StronglyConvex { lambda: 1.0 },
            Domain::Unbounded,
            Some(vec![16]),
        )
        .unwrap();
        let short_rec = run_sgd(&obj, &short, &schemes, 0.0).unwrap();
        assert_eq!(long_rec.candidates[0][0], short_rec.candidates[0][0]);
    }

    #[test]
    fn distance_to_optimum_contracts_in_the_mean() {
        // Mean over seeds of ||w_t - w*||^2 <= 1.1 * 4 G^2 / (lambda^2 t).
        let optimum = vec![0.3, -0.4];
        let obj = quad(1.0, optimum, 0.5);
        let ball = Domain::centered_ball(2, 1.0).unwrap();
        let g = obj.norm_bound(&ball).unwrap();
        let points = vec![10usize, 100];
        let seeds = 1000;
        let mut mean = vec![0.0f64; points.len()];
        for rep in 0..seeds {
            let cfg = RunConfig::new(
                100,
                mix_seed(2024, rep),
                StepSchedule::StronglyConvex { lambda: 1.0 },
                ball.clone(),
                Some(points.clone()),
            )
            .unwrap();
            let rec = run_sgd(&obj, &cfg, &[SchemeSpec::Last], 0.0).unwrap();
            for (acc, d) in mean.iter_mut().zip(rec.dist_sq.as_ref().unwrap()) {
                *acc += d / seeds as f64;
            }
        }
        for (&t, &m) in points.iter().zip(&mean) {
            let bound = 4.0 * g * g / (t as f64);
            assert!(m <= 1.1 * bound, "t={t}: mean {m} vs bound {bound}");
        }
    }

    #[test]
    fn config_validation() {
        let sched = StepSchedule::StronglyConvex { lambda: 1.0 };
        assert!(RunConfig::new(1, 0, sched, Domain::Unbounded, None).is_err());
        assert!(
            RunConfig::new(10, 0, sched, Domain::Unbounded, Some(vec![0])).is_err(),
            "record point 0 out of range"
        );
        assert!(
            RunConfig::new(10, 0, sched, Domain::Unbounded, Some(vec![11])).is_err(),
            "record point past the budget"
        );
        let obj = quad(1.0, vec![0.0], 0.0);
        let cfg = RunConfig::new(10, 0, sched, Domain::Unbounded, None).unwrap();
        assert!(run_sgd(&obj, &cfg, &[], 0.0).is_err(), "no schemes");
        let mismatched = RunConfig::new(
            10,
            0,
            sched,
            Domain::centered_ball(3, 1.0).unwrap(),
            None,
        )
        .unwrap();
        assert!(run_sgd(&obj, &mismatched, &[SchemeSpec::Last], 0.0).is_err());
    }
}
