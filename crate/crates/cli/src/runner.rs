//! Runs a resolved experiment: repetitions in parallel, aggregation,
//! bound checks, and output emission.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use subgrad::{
    aggregate, check_bound_compliance, mix_seed, reference_optimum, run_sgd, Aggregate,
    BoundKind, BoundParams, ComplianceReport, ReferenceOptimum, RunConfig, RunRecord, SchemeSpec,
    StepSchedule,
};

use crate::config::Experiment;
use crate::{csv, plot, CliError};

/// Everything a finished experiment produces.
pub struct Outcome {
    pub aggregate: Aggregate,
    pub reports: Vec<ComplianceReport>,
    pub all_checks_passed: bool,
    pub csv: String,
    pub resolved_toml: String,
    pub svg: Option<String>,
    pub reference: ReferenceOptimum,
    pub g: Option<f64>,
}

/// Executes the experiment. `jobs` bounds the worker threads; repetition
/// seeds depend only on `(master_seed, repetition index)`, so the output is
/// byte-identical at any parallelism.
pub fn run_experiment(exp: &Experiment, jobs: Option<usize>) -> Result<Outcome, CliError> {
    let g = match exp.g_override {
        Some(g) => Some(g),
        None => exp.objective.norm_bound(&exp.domain).ok(),
    };
    if !exp.checks.is_empty() && g.is_none() {
        return Err(CliError::config(
            "bound checks requested but no norm bound G is available for this \
             objective/domain; supply g_override",
        ));
    }

    let reference = reference_optimum(&exp.objective, &exp.domain, exp.ref_steps, g)?;

    let base = RunConfig::new(
        exp.iterations,
        0,
        exp.schedule,
        exp.domain.clone(),
        Some(exp.record_points.clone()),
    )?;

    let run_one = |rep: usize| -> Result<RunRecord, subgrad::Error> {
        let config = base.clone().with_seed(mix_seed(exp.master_seed, rep as u64));
        run_sgd(&exp.objective, &config, &exp.schemes, reference.value)
    };
    let records: Vec<RunRecord> = match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
            pool.install(|| {
                (0..exp.repetitions)
                    .into_par_iter()
                    .map(run_one)
                    .collect::<Result<Vec<_>, _>>()
            })?
        }
        None => (0..exp.repetitions)
            .into_par_iter()
            .map(run_one)
            .collect::<Result<Vec<_>, _>>()?,
    };

    let agg = aggregate(&records)?;

    let mut reports = Vec::new();
    let mut bound_curves: BTreeMap<String, BTreeMap<usize, f64>> = BTreeMap::new();
    for check in &exp.checks {
        let params = bound_params(exp, g, &check.scheme, check.kind)?;
        let full = check_bound_compliance(
            &agg,
            &check.scheme,
            check.kind,
            &params,
            check.slack,
            None,
        )?;
        bound_curves.insert(
            check.scheme.label(),
            full.points.iter().map(|p| (p.t, p.bound)).collect(),
        );
        let report = match &check.at {
            Some(at) => {
                let points: Vec<_> = full
                    .points
                    .iter()
                    .filter(|p| at.contains(&p.t))
                    .cloned()
                    .collect();
                let pass = points.iter().all(|p| p.pass);
                ComplianceReport {
                    points,
                    pass,
                    ..full
                }
            }
            None => full,
        };
        reports.push(report);
    }
    let all_checks_passed = reports.iter().all(|r| r.pass);

    let csv = csv::emit_csv(&agg, &bound_curves);
    let svg = if exp.emit_plot {
        plot::emit_plot(&agg, &bound_curves)
    } else {
        None
    };
    Ok(Outcome {
        aggregate: agg,
        reports,
        all_checks_passed,
        csv,
        resolved_toml: exp.resolved.to_toml(),
        svg,
        reference,
        g,
    })
}

/// Assembles the constants a bound needs from the experiment pieces:
/// `G` from the oracle (or the override), the curvature from the step
/// schedule, the diameter from the domain, and the scheme's own parameter.
fn bound_params(
    exp: &Experiment,
    g: Option<f64>,
    scheme: &SchemeSpec,
    kind: BoundKind,
) -> Result<BoundParams, CliError> {
    let mut params = BoundParams {
        g,
        ..Default::default()
    };
    match kind {
        BoundKind::LastStronglyConvex | BoundKind::Suffix | BoundKind::PolyDecay => {
            let StepSchedule::StronglyConvex { lambda } = exp.schedule else {
                return Err(CliError::config(format!(
                    "bound {} requires the strongly_convex step schedule",
                    kind.name()
                )));
            };
            params.lambda = Some(lambda);
        }
        BoundKind::LastConvex => {
            let StepSchedule::GeneralConvex { c } = exp.schedule else {
                return Err(CliError::config(format!(
                    "bound {} requires the general_convex step schedule",
                    kind.name()
                )));
            };
            params.c = Some(c);
            params.diameter = Some(exp.domain.diameter());
        }
    }
    match scheme {
        SchemeSpec::Suffix { alpha } => params.alpha = Some(*alpha),
        SchemeSpec::PolyDecay { eta } => params.eta = Some(*eta),
        _ => {}
    }
    Ok(params)
}

/// Writes `results.csv`, `resolved_config.toml` and (when produced)
/// `plot.svg` into `dir`.
pub fn write_outputs(outcome: &Outcome, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::io(format!("creating {}: {e}", dir.display())))?;
    let write = |name: &str, content: &str| -> Result<(), CliError> {
        let path = dir.join(name);
        std::fs::write(&path, content)
            .map_err(|e| CliError::io(format!("writing {}: {e}", path.display())))
    };
    write("results.csv", &outcome.csv)?;
    write("resolved_config.toml", &outcome.resolved_toml)?;
    if let Some(svg) = &outcome.svg {
        write("plot.svg", svg)?;
    }
    Ok(())
}

/// Human-readable compliance summary, one line per checked point.
pub fn render_reports(outcome: &Outcome) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    if let Some(g) = outcome.g {
        let _ = writeln!(out, "oracle norm bound G = {g}");
    }
    let _ = writeln!(
        out,
        "reference optimum = {} (tolerance {})",
        outcome.reference.value,
        outcome
            .reference
            .tolerance
            .map(|t| t.to_string())
            .unwrap_or_else(|| "unknown".to_string())
    );
    for report in &outcome.reports {
        for point in &report.points {
            let _ = writeln!(
                out,
                "check {} on {}: t={} mean={:.6e} bound={:.6e} (slack {}) {}",
                report.kind.name(),
                report.scheme.label(),
                point.t,
                point.mean,
                point.bound,
                report.slack,
                if point.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if outcome.reports.is_empty() {
        let _ = writeln!(out, "no bound checks requested");
    } else if outcome.all_checks_passed {
        let _ = writeln!(out, "all bound checks passed");
    } else {
        let _ = writeln!(out, "bound check FAILED");
    }
    out
}
