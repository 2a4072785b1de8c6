//! Shipped experiment presets.
//!
//! Two desk-scale demos with bound checks (a strongly convex quadratic and
//! a general convex l1 problem), and three hinge-loss runs on generated
//! data whose regularization strengths mirror the standard text-corpus
//! settings (1e-4, 1e-6 and 5e-5), all with poly-decay eta = 3.

use crate::config::{
    BoundCheckSection, ConfigFile, DomainSection, ObjectiveSection, ScheduleSection,
};
use crate::CliError;

pub const PRESET_NAMES: [&str; 5] = [
    "strongly-convex-demo",
    "convex-demo",
    "svm-synthetic-ccat",
    "svm-synthetic-cov1",
    "svm-synthetic-astro",
];

pub fn preset(name: &str) -> Result<ConfigFile, CliError> {
    match name {
        "strongly-convex-demo" => Ok(strongly_convex_demo()),
        "convex-demo" => Ok(convex_demo()),
        "svm-synthetic-ccat" => Ok(svm_synthetic(1e-4, 71)),
        "svm-synthetic-cov1" => Ok(svm_synthetic(1e-6, 72)),
        "svm-synthetic-astro" => Ok(svm_synthetic(5e-5, 73)),
        other => Err(CliError::config(format!(
            "unknown preset {other:?}; available: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

fn blank_objective(kind: &str) -> ObjectiveSection {
    ObjectiveSection {
        kind: kind.to_string(),
        dim: None,
        lambda: None,
        noise_sigma: None,
        optimum_radius: None,
        seed: None,
        examples: None,
        nnz: None,
        margin: None,
        flip_prob: None,
        path: None,
    }
}

fn all_schemes() -> Vec<String> {
    vec![
        "last".to_string(),
        "uniform".to_string(),
        "suffix(0.5)".to_string(),
        "polydecay(3)".to_string(),
    ]
}

/// Noisy quadratic on the unit ball, with compliance checks for the final
/// iterate, the half-suffix average and the poly-decay average.
fn strongly_convex_demo() -> ConfigFile {
    ConfigFile {
        iterations: 10_000,
        repetitions: 100,
        master_seed: 1,
        schemes: all_schemes(),
        record_points: None,
        g_override: None,
        ref_steps: 1_000_000,
        rng: crate::config::RNG_ID.to_string(),
        emit_plot: true,
        objective: ObjectiveSection {
            dim: Some(5),
            lambda: Some(1.0),
            noise_sigma: Some(0.5),
            optimum_radius: Some(0.5),
            seed: Some(1),
            ..blank_objective("quadratic")
        },
        domain: DomainSection {
            kind: "ball".to_string(),
            radius: Some(1.0),
            center: None,
            lower: None,
            upper: None,
        },
        schedule: ScheduleSection {
            kind: "strongly_convex".to_string(),
            lambda: Some(1.0),
            c: None,
            eta: None,
        },
        bound_checks: vec![
            BoundCheckSection {
                kind: "last_strongly_convex".to_string(),
                scheme: "last".to_string(),
                slack: 0.1,
                at: None,
            },
            BoundCheckSection {
                kind: "suffix".to_string(),
                scheme: "suffix(0.5)".to_string(),
                slack: 0.1,
                at: None,
            },
            BoundCheckSection {
                kind: "polydecay".to_string(),
                scheme: "polydecay(3)".to_string(),
                slack: 0.1,
                at: None,
            },
        ],
    }
}

/// Noisy l1 objective on a ball of radius 2, run with the c/sqrt(t)
/// schedule at c = D/G and checked against the convex last-iterate bound.
fn convex_demo() -> ConfigFile {
    let dim = 5.0f64;
    let sigma = 0.5f64;
    let diameter = 4.0f64;
    let g = (dim + sigma * sigma).sqrt();
    ConfigFile {
        iterations: 10_000,
        repetitions: 100,
        master_seed: 2,
        schemes: vec![
            "last".to_string(),
            "uniform".to_string(),
            "polydecay(3)".to_string(),
        ],
        record_points: None,
        g_override: None,
        ref_steps: 1_000_000,
        rng: crate::config::RNG_ID.to_string(),
        emit_plot: true,
        objective: ObjectiveSection {
            dim: Some(5),
            noise_sigma: Some(sigma),
            optimum_radius: Some(1.0),
            seed: Some(2),
            ..blank_objective("l1")
        },
        domain: DomainSection {
            kind: "ball".to_string(),
            radius: Some(2.0),
            center: None,
            lower: None,
            upper: None,
        },
        schedule: ScheduleSection {
            kind: "general_convex".to_string(),
            lambda: None,
            c: Some(diameter / g),
            eta: None,
        },
        bound_checks: vec![BoundCheckSection {
            kind: "last_convex".to_string(),
            scheme: "last".to_string(),
            slack: 0.1,
            at: None,
        }],
    }
}

/// Hinge loss over generated sparse examples on the unbounded domain, as in
/// text-classification SVM training. No norm bound exists there, so these
/// emit curves without compliance checks; the reference optimum comes from
/// the deterministic descent.
fn svm_synthetic(lambda: f64, seed: u64) -> ConfigFile {
    ConfigFile {
        iterations: 100_000,
        repetitions: 10,
        master_seed: seed,
        schemes: all_schemes(),
        record_points: None,
        g_override: None,
        ref_steps: 1_000_000,
        rng: crate::config::RNG_ID.to_string(),
        emit_plot: true,
        objective: ObjectiveSection {
            dim: Some(100),
            lambda: Some(lambda),
            seed: Some(seed),
            examples: Some(1000),
            nnz: Some(10),
            margin: Some(0.05),
            flip_prob: Some(0.05),
            ..blank_objective("hinge")
        },
        domain: DomainSection::default(),
        schedule: ScheduleSection {
            kind: "strongly_convex".to_string(),
            lambda: Some(lambda),
            c: None,
            eta: None,
        },
        bound_checks: Vec::new(),
    }
}
