//! Iterate-combination schemes.
//!
//! SGD produces a stream of iterates `w_1, w_2, ...`; what you return at the
//! end matters as much as how you step. This module implements the four
//! candidates studied in this crate, each as an online observer that is fed
//! every iterate exactly once, in order:
//!
//! * **last** — return the current iterate unchanged.
//! * **uniform** — running arithmetic mean of all iterates.
//! * **poly-decay(eta)** — running average that upweights recent iterates:
//!   `mean <- (1 - (eta+1)/(t+eta)) * mean + ((eta+1)/(t+eta)) * w_t`.
//!   With `eta = 0` this is exactly the uniform average; larger `eta` decays
//!   the influence of early iterates polynomially. Computable on the fly.
//! * **suffix(alpha)** — arithmetic mean of the last `alpha` fraction of the
//!   iterates. Needs the horizon `T` up front to know where the suffix
//!   starts, which is the practical drawback poly-decay averaging removes.
//!
//! The recursion is the scheme of record for poly-decay averaging;
//! [`poly_decay_weights`] exposes the closed-form per-iterate weights the
//! recursion unrolls to, for cross-checking.

use crate::error::{Error, Result};
use crate::point::Point;

/// Where the suffix of a horizon-`t_max` run begins (1-based iterate index).
///
/// For `alpha * t_max` integral this is `(1 - alpha) * t_max + 1`; otherwise
/// the suffix is the last `t_max - floor((1-alpha) * t_max)` iterates. The
/// small epsilon keeps exactly-integral products from landing on the wrong
/// side of `floor` after rounding (e.g. `0.3 * 10`).
pub fn suffix_start(alpha: f64, t_max: usize) -> usize {
    ((1.0 - alpha) * t_max as f64 + 1e-9).floor() as usize + 1
}

/// Per-iterate weights of the poly-decay average after `t_max` updates.
///
/// Entry `t-1` holds the weight of iterate `w_t`:
/// `alpha_t = (eta+1)/(t+eta) * prod_{j=t+1..=t_max} (j-1)/(j+eta)`.
/// Evaluated by the backward recurrence `alpha_t = alpha_{t+1} * t/(t+eta)`,
/// which is exact for the ratios involved and numerically stable.
pub fn poly_decay_weights(t_max: usize, eta: f64) -> Vec<f64> {
    assert!(t_max >= 1, "t_max must be at least 1");
    assert!(eta >= 0.0 && eta.is_finite(), "eta must be finite and >= 0");
    let mut weights = vec![0.0; t_max];
    weights[t_max - 1] = (eta + 1.0) / (t_max as f64 + eta);
    for t in (1..t_max).rev() {
        weights[t - 1] = weights[t] * t as f64 / (t as f64 + eta);
    }
    weights
}

/// One of the four scheme choices, as named in configs and CSV output.
#[derive(Debug, Clone, PartialEq)]
pub enum SchemeSpec {
    Last,
    Uniform,
    Suffix { alpha: f64 },
    PolyDecay { eta: f64 },
}

impl SchemeSpec {
    /// Validates the scheme parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            SchemeSpec::Suffix { alpha } => {
                if !(alpha.is_finite() && *alpha > 0.0 && *alpha <= 1.0) {
                    Err(Error::usage(format!(
                        "alpha must be in (0,1], got {alpha}"
                    )))
                } else {
                    Ok(())
                }
            }
            SchemeSpec::PolyDecay { eta } => {
                if !(eta.is_finite() && *eta >= 0.0) {
                    Err(Error::usage(format!("eta must be >= 0, got {eta}")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Stable label used in configs, CSV rows and plot legends.
    pub fn label(&self) -> String {
        match self {
            SchemeSpec::Last => "last".to_string(),
            SchemeSpec::Uniform => "uniform".to_string(),
            SchemeSpec::Suffix { alpha } => format!("suffix({alpha})"),
            SchemeSpec::PolyDecay { eta } => format!("polydecay({eta})"),
        }
    }

    /// Parses a scheme label: `last`, `uniform`, `suffix(0.5)`, `polydecay(3)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let spec = match text {
            "last" => SchemeSpec::Last,
            "uniform" => SchemeSpec::Uniform,
            _ => {
                let (name, arg) = text
                    .strip_suffix(')')
                    .and_then(|rest| rest.split_once('('))
                    .ok_or_else(|| {
                        Error::usage(format!(
                            "unknown scheme {text:?}; expected last, uniform, suffix(alpha) or polydecay(eta)"
                        ))
                    })?;
                let value: f64 = arg.trim().parse().map_err(|_| {
                    Error::usage(format!("scheme {text:?}: {arg:?} is not a number"))
                })?;
                match name {
                    "suffix" => SchemeSpec::Suffix { alpha: value },
                    "polydecay" => SchemeSpec::PolyDecay { eta: value },
                    _ => {
                        return Err(Error::usage(format!(
                            "unknown scheme {name:?}; expected last, uniform, suffix(alpha) or polydecay(eta)"
                        )))
                    }
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Online state of one averaging scheme.
///
/// Feed iterates with [`observe`](Averager::observe); read the current
/// combined point with [`candidate`](Averager::candidate). Querying before
/// any iterate has been absorbed (or, for a suffix average, before the
/// suffix has started) is a usage error.
#[derive(Debug, Clone, PartialEq)]
pub enum Averager {
    Last {
        current: Option<Point>,
    },
    Uniform {
        mean: Option<Point>,
        count: usize,
    },
    PolyDecay {
        eta: f64,
        mean: Option<Point>,
        count: usize,
    },
    /// Suffix average with the stopping time fixed up front.
    Suffix {
        alpha: f64,
        horizon: usize,
        start: usize,
        sum: Option<Point>,
        count: usize,
        seen: usize,
    },
}

impl Averager {
    pub fn last() -> Self {
        Averager::Last { current: None }
    }

    pub fn uniform() -> Self {
        Averager::Uniform {
            mean: None,
            count: 0,
        }
    }

    pub fn poly_decay(eta: f64) -> Result<Self> {
        SchemeSpec::PolyDecay { eta }.validate()?;
        Ok(Averager::PolyDecay {
            eta,
            mean: None,
            count: 0,
        })
    }

    pub fn suffix(alpha: f64, horizon: usize) -> Result<Self> {
        SchemeSpec::Suffix { alpha }.validate()?;
        if horizon == 0 {
            return Err(Error::usage("suffix horizon must be at least 1"));
        }
        Ok(Averager::Suffix {
            alpha,
            horizon,
            start: suffix_start(alpha, horizon),
            sum: None,
            count: 0,
            seen: 0,
        })
    }

    /// Builds the observer for a scheme spec; suffix schemes need the horizon.
    pub fn for_scheme(spec: &SchemeSpec, horizon: usize) -> Result<Self> {
        match spec {
            SchemeSpec::Last => Ok(Averager::last()),
            SchemeSpec::Uniform => Ok(Averager::uniform()),
            SchemeSpec::PolyDecay { eta } => Averager::poly_decay(*eta),
            SchemeSpec::Suffix { alpha } => Averager::suffix(*alpha, horizon),
        }
    }

    /// Absorbs the next iterate.
    pub fn observe(&mut self, w: &Point) -> Result<()> {
        match self {
            Averager::Last { current } => {
                *current = Some(w.clone());
            }
            Averager::Uniform { mean, count } => {
                *count += 1;
                update_mean(mean, w, 1.0 / *count as f64);
            }
            Averager::PolyDecay { eta, mean, count } => {
                *count += 1;
                let weight = (*eta + 1.0) / (*count as f64 + *eta);
                update_mean(mean, w, weight);
            }
            Averager::Suffix {
                horizon,
                start,
                sum,
                count,
                seen,
                ..
            } => {
                if *seen + 1 > *horizon {
                    return Err(Error::usage(format!(
                        "suffix observer past its horizon of {horizon} iterates"
                    )));
                }
                *seen += 1;
                if *seen >= *start {
                    match sum {
                        Some(acc) => acc.add_scaled(1.0, w),
                        None => *sum = Some(w.clone()),
                    }
                    *count += 1;
                }
            }
        }
        Ok(())
    }

    /// The scheme's current combined point.
    pub fn candidate(&self) -> Result<Point> {
        match self {
            Averager::Last { current } => current.clone().ok_or_else(no_updates),
            Averager::Uniform { mean, .. } | Averager::PolyDecay { mean, .. } => {
                mean.clone().ok_or_else(no_updates)
            }
            Averager::Suffix { sum, count, .. } => match sum {
                Some(acc) => Ok(acc.scaled(1.0 / *count as f64)),
                None => Err(Error::usage("suffix not yet started")),
            },
        }
    }

    /// Number of iterates absorbed into the candidate so far.
    pub fn count(&self) -> usize {
        match self {
            Averager::Last { current } => usize::from(current.is_some()),
            Averager::Uniform { count, .. } | Averager::PolyDecay { count, .. } => *count,
            Averager::Suffix { count, .. } => *count,
        }
    }
}

fn update_mean(mean: &mut Option<Point>, w: &Point, weight: f64) {
    match mean {
        Some(m) => m.mix(weight, w),
        // First update: the convex combination reduces to w itself.
        None => *mean = Some(w.clone()),
    }
}

fn no_updates() -> Error {
    Error::usage("candidate queried before any iterate was observed")
}
