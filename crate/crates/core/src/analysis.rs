//! Closed-form error bounds, empirical rate fits, and compliance checks.
//!
//! The four bound evaluators give the guaranteed expected suboptimality
//! after `T` rounds for each return scheme, as explicit formulas in the
//! oracle constants. They bound the *expectation*, so compliance is always
//! judged against the Monte Carlo mean over repetitions, never against a
//! single run.

use crate::averaging::{suffix_start, SchemeSpec};
use crate::engine::RunRecord;
use crate::error::{Error, Result};

/// Which guarantee to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Final iterate, strongly convex case: `17 G^2 (1 + ln T) / (lambda T)`.
    LastStronglyConvex,
    /// Final iterate, general convex case over a bounded domain:
    /// `(D^2/c + c G^2) (2 + ln T) / sqrt(T)`.
    LastConvex,
    /// Suffix average, strongly convex case:
    /// `17 G^2 (1 + ln(1 / min{alpha, (1 + 1/T) - alpha})) / (lambda T)`.
    Suffix,
    /// Poly-decay average, strongly convex case:
    /// `58 (1 + eta/T) (eta(eta+1) + (eta+0.5)^3 (1 + ln T)/T) G^2 / (lambda T)`.
    PolyDecay,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::LastStronglyConvex => "last_strongly_convex",
            BoundKind::LastConvex => "last_convex",
            BoundKind::Suffix => "suffix",
            BoundKind::PolyDecay => "polydecay",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "last_strongly_convex" => Ok(BoundKind::LastStronglyConvex),
            "last_convex" => Ok(BoundKind::LastConvex),
            "suffix" => Ok(BoundKind::Suffix),
            "polydecay" => Ok(BoundKind::PolyDecay),
            other => Err(Error::usage(format!(
                "unknown bound kind {other:?}; expected last_strongly_convex, last_convex, suffix or polydecay"
            ))),
        }
    }
}

/// Constants the bounds are evaluated with. Only the fields the selected
/// bound uses need to be present.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundParams {
    /// Oracle second-moment bound: `E[||ghat||^2] <= G^2`.
    pub g: Option<f64>,
    /// Strong convexity of the objective (as assumed by the step schedule).
    pub lambda: Option<f64>,
    /// Domain diameter.
    pub diameter: Option<f64>,
    /// Step-size constant of the `c/sqrt(t)` schedule.
    pub c: Option<f64>,
    /// Suffix fraction in `(0, 1]`.
    pub alpha: Option<f64>,
    /// Poly-decay parameter; the guarantee requires an integer `eta >= 1`.
    pub eta: Option<f64>,
}

impl BoundParams {
    fn g(&self) -> Result<f64> {
        let g = self.require("G", self.g)?;
        if g > 0.0 && g.is_finite() {
            Ok(g)
        } else {
            Err(Error::hypothesis(format!("G must be positive and finite, got {g}")))
        }
    }

    fn lambda(&self) -> Result<f64> {
        let lambda = self.require("lambda", self.lambda)?;
        if lambda > 0.0 && lambda.is_finite() {
            Ok(lambda)
        } else {
            Err(Error::hypothesis(format!(
                "strong convexity lambda must be positive for this bound, got {lambda}"
            )))
        }
    }

    fn require(&self, name: &str, value: Option<f64>) -> Result<f64> {
        value.ok_or_else(|| Error::hypothesis(format!("missing parameter {name}")))
    }
}

/// Evaluates the selected guarantee after `t` rounds.
pub fn theoretical_bound(kind: BoundKind, params: &BoundParams, t: usize) -> Result<f64> {
    if t < 2 {
        return Err(Error::hypothesis(format!(
            "bounds hold for budgets of at least 2 rounds, got {t}"
        )));
    }
    let t_f = t as f64;
    let log_t = t_f.ln();
    match kind {
        BoundKind::LastStronglyConvex => {
            let (g, lambda) = (params.g()?, params.lambda()?);
            Ok(17.0 * g * g * (1.0 + log_t) / (lambda * t_f))
        }
        BoundKind::LastConvex => {
            let g = params.g()?;
            let d = params.require("diameter", params.diameter)?;
            let c = params.require("c", params.c)?;
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::hypothesis(format!(
                    "diameter must be finite and positive, got {d}"
                )));
            }
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::hypothesis(format!("c must be positive, got {c}")));
            }
            Ok((d * d / c + c * g * g) * (2.0 + log_t) / t_f.sqrt())
        }
        BoundKind::Suffix => {
            let (g, lambda) = (params.g()?, params.lambda()?);
            let alpha = params.require("alpha", params.alpha)?;
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(Error::hypothesis(format!(
                    "alpha must be in (0,1], got {alpha}"
                )));
            }
            let tail = (1.0 + 1.0 / t_f) - alpha;
            let inner = alpha.min(tail);
            Ok(17.0 * g * g * (1.0 + (1.0 / inner).ln()) / (lambda * t_f))
        }
        BoundKind::PolyDecay => {
            let (g, lambda) = (params.g()?, params.lambda()?);
            let eta = params.require("eta", params.eta)?;
            if !(eta.is_finite() && eta >= 1.0 && eta.fract() == 0.0) {
                return Err(Error::hypothesis(format!(
                    "eta must be an integer >= 1 for this bound, got {eta}"
                )));
            }
            Ok(58.0
                * (1.0 + eta / t_f)
                * (eta * (eta + 1.0) + (eta + 0.5).powi(3) * (1.0 + log_t) / t_f)
                * g
                * g
                / (lambda * t_f))
        }
    }
}

/// Least-squares fit of `ln(suboptimality)` against `ln(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    /// Estimated convergence exponent (e.g. -1 for a `1/t` rate).
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(t_min, t_max)` actually used.
    pub window: (usize, usize),
}

/// Fits a power law to `(t, mean suboptimality)` points.
///
/// Points with `t < 10` are outside the asymptotic window and ignored;
/// points with nonpositive suboptimality cannot be log-transformed and are
/// dropped with a warning. At least 5 usable points are required.
pub fn fit_rate(points: &[(usize, f64)]) -> Result<RateFit> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut window = (usize::MAX, 0usize);
    for &(t, value) in points {
        if t < 10 {
            continue;
        }
        if value <= 0.0 || !value.is_finite() {
            log::warn!("rate fit: dropping t={t} with nonpositive suboptimality {value}");
            continue;
        }
        xs.push((t as f64).ln());
        ys.push(value.ln());
        window = (window.0.min(t), window.1.max(t));
    }
    let n = xs.len();
    if n < 5 {
        return Err(Error::usage(format!(
            "rate fit needs at least 5 usable points with t >= 10, got {n}"
        )));
    }
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let syy: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::usage("rate fit needs at least two distinct t values"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        window,
    })
}

/// Mean/deviation summary of one (record point, scheme) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AggCell {
    pub mean: f64,
    /// Sample standard deviation; absent with a single repetition.
    pub std: Option<f64>,
}

/// Pointwise summary of repeated runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub record_points: Vec<usize>,
    pub schemes: Vec<SchemeSpec>,
    /// `cells[p][s]` summarizes suboptimality of scheme `s` at point `p`.
    pub cells: Vec<Vec<AggCell>>,
    /// Mean `||w_t - w*||^2` per record point, when runs tracked it.
    pub dist_sq_mean: Option<Vec<f64>>,
    /// Number of repetitions aggregated.
    pub repetitions: usize,
}

impl Aggregate {
    pub fn scheme_index(&self, scheme: &SchemeSpec) -> Option<usize> {
        self.schemes.iter().position(|s| s == scheme)
    }

    /// The `(t, mean)` curve of one scheme.
    pub fn curve(&self, scheme: &SchemeSpec) -> Option<Vec<(usize, f64)>> {
        let idx = self.scheme_index(scheme)?;
        Some(
            self.record_points
                .iter()
                .zip(&self.cells)
                .map(|(&t, row)| (t, row[idx].mean))
                .collect(),
        )
    }
}

/// Pointwise sample mean and (n-1)-normalized standard deviation over runs.
///
/// All records must share the same record grid and scheme list; the result
/// does not depend on the order of the records beyond floating-point
/// summation order.
pub fn aggregate(records: &[RunRecord]) -> Result<Aggregate> {
    let first = records
        .first()
        .ok_or_else(|| Error::usage("aggregate needs at least one record"))?;
    for rec in records {
        if rec.record_points != first.record_points || rec.schemes != first.schemes {
            return Err(Error::usage(
                "records disagree on record points or scheme set",
            ));
        }
    }
    let n = records.len();
    let nf = n as f64;
    let mut cells = Vec::with_capacity(first.record_points.len());
    for p in 0..first.record_points.len() {
        let mut row = Vec::with_capacity(first.schemes.len());
        for s in 0..first.schemes.len() {
            let mean = records.iter().map(|r| r.suboptimality[p][s]).sum::<f64>() / nf;
            let std = (n > 1).then(|| {
                let var = records
                    .iter()
                    .map(|r| {
                        let d = r.suboptimality[p][s] - mean;
                        d * d
                    })
                    .sum::<f64>()
                    / (nf - 1.0);
                var.sqrt()
            });
            row.push(AggCell { mean, std });
        }
        cells.push(row);
    }
    let dist_sq_mean = first.dist_sq.as_ref().map(|_| {
        (0..first.record_points.len())
            .map(|p| {
                records
                    .iter()
                    .map(|r| r.dist_sq.as_ref().expect("checked same shape")[p])
                    .sum::<f64>()
                    / nf
            })
            .collect()
    });
    Ok(Aggregate {
        record_points: first.record_points.clone(),
        schemes: first.schemes.clone(),
        cells,
        dist_sq_mean,
        repetitions: n,
    })
}

/// One compliance row: the bound at `t`, the observed mean, and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct CompliancePoint {
    pub t: usize,
    pub bound: f64,
    pub mean: f64,
    pub pass: bool,
}

/// Result of checking one scheme's mean curve against one bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplianceReport {
    pub kind: BoundKind,
    pub scheme: SchemeSpec,
    pub points: Vec<CompliancePoint>,
    pub pass: bool,
    /// The G the bound was evaluated with, for auditability.
    pub g_used: f64,
    pub slack: f64,
}

/// Checks `mean <= (1 + slack) * bound` for one scheme at the requested
/// record points (all points with `t >= 2` when `at` is `None`).
///
/// For the suffix bound the evaluated fraction is the *effective* one,
/// `count/t` for the suffix window actually averaged at horizon `t`, which
/// equals `alpha` whenever `alpha * t` is integral.
pub fn check_bound_compliance(
    agg: &Aggregate,
    scheme: &SchemeSpec,
    kind: BoundKind,
    params: &BoundParams,
    slack: f64,
    at: Option<&[usize]>,
) -> Result<ComplianceReport> {
    if !(slack.is_finite() && slack >= 0.0) {
        return Err(Error::usage(format!("slack must be >= 0, got {slack}")));
    }
    let idx = agg
        .scheme_index(scheme)
        .ok_or_else(|| Error::usage(format!("scheme {} not in aggregate", scheme.label())))?;
    if let Some(requested) = at {
        for t in requested {
            if !agg.record_points.contains(t) {
                return Err(Error::usage(format!(
                    "compliance requested at t={t}, which is not a record point"
                )));
            }
        }
    }

    let mut points = Vec::new();
    for (p, &t) in agg.record_points.iter().enumerate() {
        let wanted = match at {
            Some(requested) => requested.contains(&t),
            None => t >= 2,
        };
        if !wanted {
            continue;
        }
        let bound = theoretical_bound(kind, &params_at(kind, params, scheme, t), t)?;
        let mean = agg.cells[p][idx].mean;
        points.push(CompliancePoint {
            t,
            bound,
            mean,
            pass: mean <= (1.0 + slack) * bound,
        });
    }
    if points.is_empty() {
        return Err(Error::usage("no record points to check compliance at"));
    }
    let pass = points.iter().all(|p| p.pass);
    Ok(ComplianceReport {
        kind,
        scheme: scheme.clone(),
        points,
        pass,
        g_used: params.g.unwrap_or(f64::NAN),
        slack,
    })
}

/// Per-point parameter adjustment: the suffix bound is evaluated with the
/// fraction the observer actually averaged at horizon `t`.
fn params_at(kind: BoundKind, params: &BoundParams, scheme: &SchemeSpec, t: usize) -> BoundParams {
    let mut adjusted = params.clone();
    if kind == BoundKind::Suffix {
        if let SchemeSpec::Suffix { alpha } = scheme {
            let count = t + 1 - suffix_start(*alpha, t);
            adjusted.alpha = Some(count as f64 / t as f64);
        }
    }
    adjusted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_5digits(value: f64, reference: f64) {
        assert!(
            ((value / reference) - 1.0).abs() < 5e-5,
            "{value} vs {reference}"
        );
    }

    #[test]
    fn bound_values_match_hand_evaluation() {
        let p = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            ..Default::default()
        };
        close_5digits(
            theoretical_bound(BoundKind::LastStronglyConvex, &p, 10).unwrap(),
            5.61439,
        );

        let p = BoundParams {
            g: Some(1.0),
            diameter: Some(1.0),
            c: Some(1.0),
            ..Default::default()
        };
        close_5digits(theoretical_bound(BoundKind::LastConvex, &p, 100).unwrap(), 1.32103);

        let p = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            alpha: Some(0.5),
            ..Default::default()
        };
        close_5digits(theoretical_bound(BoundKind::Suffix, &p, 10).unwrap(), 2.87835);

        let p = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            eta: Some(1.0),
            ..Default::default()
        };
        close_5digits(theoretical_bound(BoundKind::PolyDecay, &p, 100).unwrap(), 1.28242);
    }

    #[test]
    fn hypothesis_violations_are_named() {
        let p = BoundParams {
            g: Some(1.0),
            lambda: Some(0.0),
            ..Default::default()
        };
        let err = theoretical_bound(BoundKind::LastStronglyConvex, &p, 10).unwrap_err();
        assert!(err.to_string().contains("lambda"), "{err}");

        let p = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            eta: Some(2.5),
            ..Default::default()
        };
        let err = theoretical_bound(BoundKind::PolyDecay, &p, 10).unwrap_err();
        assert!(err.to_string().contains("eta"), "{err}");

        let p = BoundParams {
            g: Some(1.0),
            diameter: Some(f64::INFINITY),
            c: Some(1.0),
            ..Default::default()
        };
        assert!(theoretical_bound(BoundKind::LastConvex, &p, 10).is_err());

        let p = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            ..Default::default()
        };
        assert!(theoretical_bound(BoundKind::LastStronglyConvex, &p, 1).is_err());
        assert!(theoretical_bound(BoundKind::Suffix, &p, 10).is_err(), "missing alpha");
    }

    #[test]
    fn bound_monotonicity() {
        let mk = |g: f64| BoundParams {
            g: Some(g),
            lambda: Some(1.0),
            ..Default::default()
        };
        let mut prev = f64::INFINITY;
        for t in 3..200 {
            let b = theoretical_bound(BoundKind::LastStronglyConvex, &mk(1.0), t).unwrap();
            assert!(b < prev, "not decreasing at t={t}");
            prev = b;
        }
        assert!(
            theoretical_bound(BoundKind::LastStronglyConvex, &mk(2.0), 50).unwrap()
                > theoretical_bound(BoundKind::LastStronglyConvex, &mk(1.0), 50).unwrap()
        );
    }

    #[test]
    fn suffix_bound_prefers_balanced_fractions() {
        let mk = |alpha: f64| BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            alpha: Some(alpha),
            ..Default::default()
        };
        let t = 1000;
        let mid = theoretical_bound(BoundKind::Suffix, &mk(0.5), t).unwrap();
        let extreme = theoretical_bound(BoundKind::Suffix, &mk(0.05), t).unwrap();
        assert!(mid <= extreme);
        // Grid search: the minimum sits where min{alpha, (1+1/T)-alpha} peaks.
        let best_alpha = (1.0 + 1.0 / t as f64) / 2.0;
        let best = theoretical_bound(BoundKind::Suffix, &mk(best_alpha), t).unwrap();
        for k in 1..=100 {
            let alpha = k as f64 / 100.0;
            let b = theoretical_bound(BoundKind::Suffix, &mk(alpha), t).unwrap();
            assert!(best <= b + 1e-12, "alpha={alpha}");
        }
    }

    #[test]
    fn rate_fit_recovers_pure_power_laws() {
        let points: Vec<(usize, f64)> = (1..=60).map(|k| (k * 10, 7.0 / (k * 10) as f64)).collect();
        let fit = fit_rate(&points).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-10, "slope {}", fit.slope);
        assert!((fit.r_squared - 1.0).abs() < 1e-10);
        assert_eq!(fit.window, (10, 600));

        let points: Vec<(usize, f64)> =
            (1..=60).map(|k| (k * 10, 3.0 / ((k * 10) as f64).sqrt())).collect();
        let fit = fit_rate(&points).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-10);
    }

    #[test]
    fn rate_fit_on_log_dragged_curve() {
        // err = (1 + ln t)/t over t in [1e3, 1e5]: the log factor drags the
        // fitted exponent slightly below -1.
        let mut points = Vec::new();
        let mut t = 1000usize;
        while t <= 100_000 {
            let tf = t as f64;
            points.push((t, (1.0 + tf.ln()) / tf));
            t = (t as f64 * 1.3) as usize + 1;
        }
        let fit = fit_rate(&points).unwrap();
        assert!(
            fit.slope > -1.25 && fit.slope < -0.95,
            "slope {}",
            fit.slope
        );
    }

    #[test]
    fn rate_fit_input_rules() {
        // Points below t=10 are ignored; nonpositive values are dropped.
        let few: Vec<(usize, f64)> = vec![(2, 1.0), (3, 0.5), (4, 0.25), (5, 0.2), (6, 0.1)];
        assert!(fit_rate(&few).is_err());
        let mixed: Vec<(usize, f64)> = vec![
            (10, 1.0),
            (20, 0.5),
            (30, 0.0),
            (40, 0.25),
            (50, 0.2),
            (60, -0.1),
            (70, 0.14),
        ];
        let fit = fit_rate(&mixed).unwrap();
        assert_eq!(fit.window, (10, 70));
    }

    fn record(values: &[f64]) -> RunRecord {
        use crate::point::Point;
        RunRecord {
            record_points: (1..=values.len()).collect(),
            schemes: vec![SchemeSpec::Last],
            suboptimality: values.iter().map(|v| vec![*v]).collect(),
            candidates: values.iter().map(|v| vec![Point::from(vec![*v])]).collect(),
            dist_sq: None,
            finals: vec![Point::from(vec![*values.last().unwrap()])],
        }
    }

    #[test]
    fn aggregate_mean_and_std() {
        let single = aggregate(&[record(&[1.0, 2.0])]).unwrap();
        assert_eq!(single.cells[0][0].mean, 1.0);
        assert_eq!(single.cells[0][0].std, None);

        let two = aggregate(&[record(&[1.0, 1.0]), record(&[3.0, 1.0])]).unwrap();
        assert_eq!(two.cells[0][0].mean, 2.0);
        assert!((two.cells[0][0].std.unwrap() - 2.0f64.sqrt()).abs() < 1e-15);

        let many: Vec<RunRecord> = (0..100).map(|_| record(&[4.0, 5.0])).collect();
        let agg = aggregate(&many).unwrap();
        assert_eq!(agg.cells[1][0].std, Some(0.0));
        assert_eq!(agg.repetitions, 100);
    }

    #[test]
    fn aggregate_rejects_mismatched_grids() {
        let a = record(&[1.0, 2.0]);
        let b = record(&[1.0, 2.0, 3.0]);
        assert!(aggregate(&[a, b]).is_err());
        assert!(aggregate(&[]).is_err());
    }

    #[test]
    fn compliance_passes_at_the_boundary_and_under_permutation() {
        let params = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            ..Default::default()
        };
        // A mean exactly on (1 + slack) * bound passes (inclusive).
        let t = 16;
        let bound = theoretical_bound(BoundKind::LastStronglyConvex, &params, t).unwrap();
        let exact = RunRecord {
            record_points: vec![t],
            schemes: vec![SchemeSpec::Last],
            suboptimality: vec![vec![1.1 * bound]],
            candidates: vec![vec![crate::point::Point::zeros(1)]],
            dist_sq: None,
            finals: vec![crate::point::Point::zeros(1)],
        };
        let agg = aggregate(&[exact]).unwrap();
        let report = check_bound_compliance(
            &agg,
            &SchemeSpec::Last,
            BoundKind::LastStronglyConvex,
            &params,
            0.1,
            None,
        )
        .unwrap();
        assert!(report.pass);

        // Permutation invariance of the verdict.
        let mut records = vec![record(&[0.1, 0.05]), record(&[0.2, 0.01]), record(&[0.15, 0.02])];
        let forward = check_bound_compliance(
            &aggregate(&records).unwrap(),
            &SchemeSpec::Last,
            BoundKind::LastStronglyConvex,
            &params,
            0.1,
            None,
        )
        .unwrap();
        records.reverse();
        let backward = check_bound_compliance(
            &aggregate(&records).unwrap(),
            &SchemeSpec::Last,
            BoundKind::LastStronglyConvex,
            &params,
            0.1,
            None,
        )
        .unwrap();
        assert_eq!(forward.pass, backward.pass);
        assert_eq!(forward.points.len(), backward.points.len());
    }

    #[test]
    fn compliance_zero_mean_passes_everything() {
        let zero = record(&[0.0, 0.0, 0.0]);
        let agg = aggregate(&[zero]).unwrap();
        for (kind, params) in [
            (
                BoundKind::LastStronglyConvex,
                BoundParams {
                    g: Some(1.0),
                    lambda: Some(1.0),
                    ..Default::default()
                },
            ),
            (
                BoundKind::LastConvex,
                BoundParams {
                    g: Some(1.0),
                    diameter: Some(1.0),
                    c: Some(1.0),
                    ..Default::default()
                },
            ),
        ] {
            let report =
                check_bound_compliance(&agg, &SchemeSpec::Last, kind, &params, 0.0, None).unwrap();
            assert!(report.pass);
        }
    }

    #[test]
    fn compliance_at_subset_and_unknown_points() {
        let agg = aggregate(&[record(&[0.1, 0.1, 0.1, 0.1])]).unwrap();
        let params = BoundParams {
            g: Some(1.0),
            lambda: Some(1.0),
            ..Default::default()
        };
        let report = check_bound_compliance(
            &agg,
            &SchemeSpec::Last,
            BoundKind::LastStronglyConvex,
            &params,
            0.1,
            Some(&[2, 4]),
        )
        .unwrap();
        assert_eq!(report.points.len(), 2);
        assert!(check_bound_compliance(
            &agg,
            &SchemeSpec::Last,
            BoundKind::LastStronglyConvex,
            &params,
            0.1,
            Some(&[7]),
        )
        .is_err());
    }
}
