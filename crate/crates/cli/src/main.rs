//! Command-line entry point.
//!
//! Exit codes: 0 success, 1 a requested bound-compliance check failed,
//! 2 usage/config error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use subgrad::{poly_decay_weights, theoretical_bound, BoundKind, BoundParams};
use subgrad_cli::config::ConfigFile;
use subgrad_cli::runner::{render_reports, run_experiment, write_outputs};
use subgrad_cli::{presets, CliError};

#[derive(Parser)]
#[command(
    name = "subgrad",
    version,
    about = "Stochastic subgradient descent experiments with iterate averaging"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config file.
    Run {
        config: PathBuf,
        /// Output directory for results.csv, resolved_config.toml, plot.svg.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads for repetitions (default: rayon's choice).
        #[arg(long, short)]
        jobs: Option<usize>,
    },
    /// Run a shipped preset experiment.
    Preset {
        /// One of: strongly-convex-demo, convex-demo, svm-synthetic-ccat,
        /// svm-synthetic-cov1, svm-synthetic-astro.
        name: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the preset's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the preset's repetition count.
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, short)]
        jobs: Option<usize>,
    },
    /// Print the per-iterate weights of the poly-decay average.
    Weights {
        /// Number of iterates.
        #[arg(long = "T")]
        t: usize,
        #[arg(long)]
        eta: f64,
    },
    /// Evaluate an error bound.
    Bound {
        /// last_strongly_convex, last_convex, suffix or polydecay.
        #[arg(long)]
        kind: String,
        #[arg(long = "T")]
        t: usize,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        diameter: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Parse an SVMlight dataset and report its shape.
    ParseCheck { dataset: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Run { config, out, jobs } => {
            let experiment = ConfigFile::load(&config)?.resolve()?;
            execute(&experiment, jobs, &out)
        }
        Command::Preset {
            name,
            out,
            seed,
            reps,
            jobs,
        } => {
            let mut config = presets::preset(&name)?;
            if let Some(reps) = reps {
                config.repetitions = reps;
            }
            let experiment = match seed {
                Some(seed) => {
                    config.master_seed = seed;
                    config.resolve_with_seed_applied()?
                }
                None => config.resolve()?,
            };
            execute(&experiment, jobs, &out)
        }
        Command::Weights { t, eta } => {
            if t < 1 {
                return Err(CliError::config("--T must be at least 1"));
            }
            if !(eta.is_finite() && eta >= 0.0) {
                return Err(CliError::config("--eta must be >= 0"));
            }
            println!("t,alpha");
            for (i, alpha) in poly_decay_weights(t, eta).iter().enumerate() {
                println!("{},{alpha:.16e}", i + 1);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            kind,
            t,
            g,
            lambda,
            diameter,
            c,
            alpha,
            eta,
        } => {
            let kind = BoundKind::parse(&kind)?;
            let params = BoundParams {
                g,
                lambda,
                diameter,
                c,
                alpha,
                eta,
            };
            let value = theoretical_bound(kind, &params, t)?;
            println!("{value:.16e}");
            Ok(ExitCode::SUCCESS)
        }
        Command::ParseCheck { dataset } => {
            let text = std::fs::read_to_string(&dataset)
                .map_err(|e| CliError::io(format!("reading {}: {e}", dataset.display())))?;
            let data = subgrad::parse_svmlight(&text)
                .map_err(|e| CliError::config(format!("{}: {e}", dataset.display())))?;
            let nnz: usize = data.examples().iter().map(|ex| ex.features.len()).sum();
            println!(
                "ok: {} examples, dimension {}, {} nonzeros, max example norm {}",
                data.len(),
                data.dim(),
                nnz,
                data.max_example_norm()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn execute(
    experiment: &subgrad_cli::config::Experiment,
    jobs: Option<usize>,
    out: &PathBuf,
) -> Result<ExitCode, CliError> {
    let outcome = run_experiment(experiment, jobs)?;
    write_outputs(&outcome, out)?;
    print!("{}", render_reports(&outcome));
    println!("wrote {}", out.join("results.csv").display());
    if outcome.all_checks_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
