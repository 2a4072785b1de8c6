//! Experiment configuration: a TOML file with nested sections.
//!
//! Unknown keys are rejected rather than ignored, so typos fail loudly.
//! [`ConfigFile::resolve`] fills every default in and validates the whole
//! thing; the resolved form is echoed next to the results and is itself a
//! valid config that reproduces the identical run.

use std::path::Path;

use serde::{Deserialize, Serialize};

use subgrad::{
    BoundKind, Dataset, Domain, Objective, Point, SchemeSpec, StepSchedule, SyntheticSpec,
};

use crate::CliError;

/// Environment variable that overrides `master_seed` when set.
pub const SEED_ENV_VAR: &str = "SUBGRAD_SEED";

/// The only pinned random generator. Recorded in the config so results are
/// reproducible across builds: repetition seeds come from splitmix64 over
/// `(master_seed, repetition index)` and drive a ChaCha8 stream.
pub const RNG_ID: &str = "chacha8";

fn default_repetitions() -> usize {
    10
}

fn default_ref_steps() -> usize {
    1_000_000
}

fn default_rng() -> String {
    RNG_ID.to_string()
}

fn default_true() -> bool {
    true
}

fn default_slack() -> f64 {
    0.1
}

/// On-disk experiment description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// Oracle-call budget `T` of each run.
    pub iterations: usize,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    pub master_seed: u64,
    /// Scheme labels: `last`, `uniform`, `suffix(alpha)`, `polydecay(eta)`.
    pub schemes: Vec<String>,
    /// Explicit record grid; defaults to a geometric grid over `[1, T]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_points: Option<Vec<usize>>,
    /// Overrides the computed oracle norm bound `G`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_override: Option<f64>,
    /// Length of the deterministic descent that computes the reference
    /// optimum for objectives without a closed-form one.
    #[serde(default = "default_ref_steps")]
    pub ref_steps: usize,
    #[serde(default = "default_rng")]
    pub rng: String,
    #[serde(default = "default_true")]
    pub emit_plot: bool,
    pub objective: ObjectiveSection,
    #[serde(default)]
    pub domain: DomainSection,
    pub schedule: ScheduleSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bound_checks: Vec<BoundCheckSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSection {
    /// `quadratic`, `l1`, `hinge` or `dataset`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Curvature (quadratic, hinge, dataset).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Oracle noise magnitude (quadratic, l1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_sigma: Option<f64>,
    /// The optimum is placed uniformly in a ball of this radius
    /// (quadratic, l1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum_radius: Option<f64>,
    /// Generator seed for synthetic instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of generated examples (hinge).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub examples: Option<usize>,
    /// Nonzeros per generated example (hinge); omitted means dense.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nnz: Option<usize>,
    /// Witness margin of generated examples (hinge).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Label-flip probability of generated examples (hinge).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip_prob: Option<f64>,
    /// SVMlight file (dataset).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSection {
    /// `unbounded`, `ball` or `box`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Ball center; defaults to the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<f64>>,
}

impl Default for DomainSection {
    fn default() -> Self {
        DomainSection {
            kind: "unbounded".to_string(),
            radius: None,
            center: None,
            lower: None,
            upper: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    /// `strongly_convex`, `general_convex` or `constant`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundCheckSection {
    /// `last_strongly_convex`, `last_convex`, `suffix` or `polydecay`.
    pub kind: String,
    /// Label of the scheme the bound applies to.
    pub scheme: String,
    #[serde(default = "default_slack")]
    pub slack: f64,
    /// Record points to judge compliance at; defaults to all with `t >= 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<Vec<usize>>,
}

/// A fully validated experiment, ready to run.
pub struct Experiment {
    pub objective: Objective,
    pub domain: Domain,
    pub schedule: StepSchedule,
    pub schemes: Vec<SchemeSpec>,
    pub checks: Vec<ResolvedCheck>,
    pub iterations: usize,
    pub repetitions: usize,
    pub master_seed: u64,
    pub record_points: Vec<usize>,
    pub g_override: Option<f64>,
    pub ref_steps: usize,
    pub emit_plot: bool,
    /// The canonical config that reproduces this experiment.
    pub resolved: ConfigFile,
}

pub struct ResolvedCheck {
    pub kind: BoundKind,
    pub scheme: SchemeSpec,
    pub slack: f64,
    pub at: Option<Vec<usize>>,
}

impl ConfigFile {
    /// Parses a config; unknown keys, missing keys and type mismatches all
    /// fail with the offending key path in the message.
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::config(format!("config error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// Validates everything, applies defaults and the environment seed
    /// override, and builds the runnable experiment.
    pub fn resolve(mut self) -> Result<Experiment, CliError> {
        if let Ok(value) = std::env::var(SEED_ENV_VAR) {
            let seed: u64 = value.parse().map_err(|_| {
                CliError::config(format!("{SEED_ENV_VAR}={value:?} is not a valid seed"))
            })?;
            eprintln!("master_seed overridden by {SEED_ENV_VAR}={seed}");
            self.master_seed = seed;
        }
        self.resolve_with_seed_applied()
    }

    /// Same as [`resolve`](Self::resolve) but never consults the
    /// environment; used when a command-line flag already pinned the seed.
    pub fn resolve_with_seed_applied(mut self) -> Result<Experiment, CliError> {
        if self.iterations < 2 {
            return Err(CliError::config("iterations must be at least 2"));
        }
        if self.repetitions < 1 {
            return Err(CliError::config("repetitions must be at least 1"));
        }
        if self.rng != RNG_ID {
            return Err(CliError::config(format!(
                "rng: only {RNG_ID:?} is supported, got {:?}",
                self.rng
            )));
        }
        if self.schemes.is_empty() {
            return Err(CliError::config("schemes must be nonempty"));
        }
        let schemes: Vec<SchemeSpec> = self
            .schemes
            .iter()
            .map(|label| {
                SchemeSpec::parse(label)
                    .map_err(|e| CliError::config(format!("schemes: {e}")))
            })
            .collect::<Result<_, _>>()?;
        // Canonicalize labels so the echo and the CSV agree bitwise.
        self.schemes = schemes.iter().map(SchemeSpec::label).collect();

        let objective = self.objective.build()?;
        let domain = self.domain.build(objective.dim())?;
        domain
            .check_dim(objective.dim())
            .map_err(|e| CliError::config(format!("domain: {e}")))?;
        let schedule = self.schedule.build(&objective)?;

        let record_points = match &self.record_points {
            Some(points) => {
                let mut points = points.clone();
                points.sort_unstable();
                points.dedup();
                if points.first().is_none_or(|&p| p < 1)
                    || points.last().is_none_or(|&p| p > self.iterations)
                {
                    return Err(CliError::config(format!(
                        "record_points must lie in [1, {}]",
                        self.iterations
                    )));
                }
                if *points.last().unwrap() != self.iterations {
                    points.push(self.iterations);
                }
                points
            }
            None => subgrad::default_record_grid(self.iterations),
        };
        self.record_points = Some(record_points.clone());

        let mut checks = Vec::new();
        for check in &self.bound_checks {
            let kind = BoundKind::parse(&check.kind)
                .map_err(|e| CliError::config(format!("bound_checks: {e}")))?;
            let scheme = SchemeSpec::parse(&check.scheme)
                .map_err(|e| CliError::config(format!("bound_checks: {e}")))?;
            if !schemes.contains(&scheme) {
                return Err(CliError::config(format!(
                    "bound_checks: scheme {} is not in the schemes list",
                    scheme.label()
                )));
            }
            let coherent = matches!(
                (kind, &scheme),
                (BoundKind::LastStronglyConvex, SchemeSpec::Last)
                    | (BoundKind::LastConvex, SchemeSpec::Last)
                    | (BoundKind::Suffix, SchemeSpec::Suffix { .. })
                    | (BoundKind::PolyDecay, SchemeSpec::PolyDecay { .. })
            );
            if !coherent {
                return Err(CliError::config(format!(
                    "bound_checks: bound {} does not describe scheme {}",
                    kind.name(),
                    scheme.label()
                )));
            }
            if !(check.slack.is_finite() && check.slack >= 0.0) {
                return Err(CliError::config("bound_checks: slack must be >= 0"));
            }
            if let Some(at) = &check.at {
                for t in at {
                    if !record_points.contains(t) {
                        return Err(CliError::config(format!(
                            "bound_checks: at point {t} is not a record point"
                        )));
                    }
                }
            }
            checks.push(ResolvedCheck {
                kind,
                scheme,
                slack: check.slack,
                at: check.at.clone(),
            });
        }

        if let Some(g) = self.g_override {
            if !(g.is_finite() && g > 0.0) {
                return Err(CliError::config("g_override must be positive and finite"));
            }
        }
        if self.ref_steps < 2 {
            return Err(CliError::config("ref_steps must be at least 2"));
        }

        Ok(Experiment {
            objective,
            domain,
            schedule,
            schemes,
            checks,
            iterations: self.iterations,
            repetitions: self.repetitions,
            master_seed: self.master_seed,
            record_points,
            g_override: self.g_override,
            ref_steps: self.ref_steps,
            emit_plot: self.emit_plot,
            resolved: self,
        })
    }
}

impl ObjectiveSection {
    fn build(&self) -> Result<Objective, CliError> {
        let ctx = |e: subgrad::Error| CliError::config(format!("objective: {e}"));
        match self.kind.as_str() {
            "quadratic" => {
                self.forbid(&["examples", "nnz", "margin", "flip_prob", "path"])?;
                let spec = subgrad::QuadraticSpec {
                    dim: self.require_dim()?,
                    lambda: self.required("lambda", self.lambda)?,
                    optimum_radius: self.required("optimum_radius", self.optimum_radius)?,
                    noise_sigma: self.noise_sigma.unwrap_or(0.0),
                    seed: self.seed.unwrap_or(0),
                };
                SyntheticSpec::Quadratic(spec).generate().map_err(ctx)
            }
            "l1" => {
                self.forbid(&["lambda", "examples", "nnz", "margin", "flip_prob", "path"])?;
                let spec = subgrad::L1Spec {
                    dim: self.require_dim()?,
                    optimum_radius: self.required("optimum_radius", self.optimum_radius)?,
                    noise_sigma: self.noise_sigma.unwrap_or(0.0),
                    seed: self.seed.unwrap_or(0),
                };
                SyntheticSpec::L1(spec).generate().map_err(ctx)
            }
            "hinge" => {
                self.forbid(&["noise_sigma", "optimum_radius", "path"])?;
                let spec = subgrad::SvmSpec {
                    dim: self.require_dim()?,
                    examples: self.required_usize("examples", self.examples)?,
                    nnz: self.nnz,
                    margin: self.margin.unwrap_or(0.0),
                    flip_prob: self.flip_prob.unwrap_or(0.0),
                    lambda: self.required("lambda", self.lambda)?,
                    seed: self.seed.unwrap_or(0),
                };
                SyntheticSpec::Svm(spec).generate().map_err(ctx)
            }
            "dataset" => {
                self.forbid(&[
                    "noise_sigma",
                    "optimum_radius",
                    "seed",
                    "examples",
                    "nnz",
                    "margin",
                    "flip_prob",
                ])?;
                let path = self
                    .path
                    .as_ref()
                    .ok_or_else(|| CliError::config("objective.path is required for dataset"))?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::io(format!("reading dataset {path}: {e}")))?;
                let data = subgrad::parse_svmlight_with_dim(&text, self.dim)
                    .map_err(|e| CliError::config(format!("objective.path {path}: {e}")))?;
                Objective::regularized_hinge(self.required("lambda", self.lambda)?, data)
                    .map_err(ctx)
            }
            other => Err(CliError::config(format!(
                "objective.kind {other:?} unknown; expected quadratic, l1, hinge or dataset"
            ))),
        }
    }

    fn require_dim(&self) -> Result<usize, CliError> {
        self.required_usize("dim", self.dim)
    }

    fn required(&self, name: &str, value: Option<f64>) -> Result<f64, CliError> {
        value.ok_or_else(|| {
            CliError::config(format!(
                "objective.{name} is required for kind {:?}",
                self.kind
            ))
        })
    }

    fn required_usize(&self, name: &str, value: Option<usize>) -> Result<usize, CliError> {
        value.ok_or_else(|| {
            CliError::config(format!(
                "objective.{name} is required for kind {:?}",
                self.kind
            ))
        })
    }

    fn forbid(&self, names: &[&str]) -> Result<(), CliError> {
        let present = |name: &str| match name {
            "lambda" => self.lambda.is_some(),
            "noise_sigma" => self.noise_sigma.is_some(),
            "optimum_radius" => self.optimum_radius.is_some(),
            "examples" => self.examples.is_some(),
            "nnz" => self.nnz.is_some(),
            "margin" => self.margin.is_some(),
            "flip_prob" => self.flip_prob.is_some(),
            "path" => self.path.is_some(),
            "seed" => self.seed.is_some(),
            _ => false,
        };
        for name in names {
            if present(name) {
                return Err(CliError::config(format!(
                    "objective.{name} does not apply to kind {:?}",
                    self.kind
                )));
            }
        }
        Ok(())
    }
}

impl DomainSection {
    fn build(&self, dim: usize) -> Result<Domain, CliError> {
        let ctx = |e: subgrad::Error| CliError::config(format!("domain: {e}"));
        match self.kind.as_str() {
            "unbounded" => {
                if self.radius.is_some()
                    || self.center.is_some()
                    || self.lower.is_some()
                    || self.upper.is_some()
                {
                    return Err(CliError::config(
                        "domain: unbounded takes no further keys",
                    ));
                }
                Ok(Domain::Unbounded)
            }
            "ball" => {
                if self.lower.is_some() || self.upper.is_some() {
                    return Err(CliError::config("domain: ball takes radius and center"));
                }
                let radius = self
                    .radius
                    .ok_or_else(|| CliError::config("domain.radius is required for ball"))?;
                let center = match &self.center {
                    Some(c) => Point::new(c.clone()).map_err(ctx)?,
                    None => Point::zeros(dim),
                };
                Domain::l2_ball(center, radius).map_err(ctx)
            }
            "box" => {
                if self.radius.is_some() || self.center.is_some() {
                    return Err(CliError::config("domain: box takes lower and upper"));
                }
                let lower = self
                    .lower
                    .clone()
                    .ok_or_else(|| CliError::config("domain.lower is required for box"))?;
                let upper = self
                    .upper
                    .clone()
                    .ok_or_else(|| CliError::config("domain.upper is required for box"))?;
                Domain::axis_box(
                    Point::new(lower).map_err(ctx)?,
                    Point::new(upper).map_err(ctx)?,
                )
                .map_err(ctx)
            }
            other => Err(CliError::config(format!(
                "domain.kind {other:?} unknown; expected unbounded, ball or box"
            ))),
        }
    }
}

impl ScheduleSection {
    fn build(&self, objective: &Objective) -> Result<StepSchedule, CliError> {
        let schedule = match self.kind.as_str() {
            "strongly_convex" => {
                if self.c.is_some() || self.eta.is_some() {
                    return Err(CliError::config("schedule: strongly_convex takes lambda"));
                }
                let lambda = self.lambda.ok_or_else(|| {
                    CliError::config("schedule.lambda is required for strongly_convex")
                })?;
                // Running with c/(lambda t) steps is expressed by passing the
                // smaller curvature lambda/c, so the schedule's lambda must
                // be a valid lower bound on the objective's.
                if lambda > objective.strong_convexity() {
                    return Err(CliError::config(format!(
                        "schedule.lambda = {lambda} exceeds the objective's strong convexity {}",
                        objective.strong_convexity()
                    )));
                }
                StepSchedule::StronglyConvex { lambda }
            }
            "general_convex" => {
                if self.lambda.is_some() || self.eta.is_some() {
                    return Err(CliError::config("schedule: general_convex takes c"));
                }
                StepSchedule::GeneralConvex {
                    c: self
                        .c
                        .ok_or_else(|| CliError::config("schedule.c is required"))?,
                }
            }
            "constant" => {
                if self.lambda.is_some() || self.c.is_some() {
                    return Err(CliError::config("schedule: constant takes eta"));
                }
                StepSchedule::Constant {
                    eta: self
                        .eta
                        .ok_or_else(|| CliError::config("schedule.eta is required"))?,
                }
            }
            other => {
                return Err(CliError::config(format!(
                    "schedule.kind {other:?} unknown; expected strongly_convex, general_convex or constant"
                )))
            }
        };
        schedule
            .validate()
            .map_err(|e| CliError::config(format!("schedule: {e}")))?;
        Ok(schedule)
    }
}
