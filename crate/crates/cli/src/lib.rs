//! Library behind the `holohad` binary: build holonomic Hadamard gates, run
//! squeezing-error fidelity studies and verify the Fock-space oracle.
//!
//! Exit codes: 0 success, 1 verification or expectation failure, 2 usage or
//! domain error.

pub mod commands;
pub mod config;
pub mod output;
#[cfg(test)]
mod tests;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hadamard_core::noise::Spacing;
use hadamard_core::NoiseFamily;

use config::{ExperimentConfig, Format};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<hadamard_core::Error> for CliError {
    fn from(e: hadamard_core::Error) -> Self {
        Self::usage(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "holohad", version, about = "Holonomic Hadamard gates from squeezing and displacement loops")]
pub struct Cli {
    /// Base seed; sample i uses seed + i.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML config file with keys named after the long flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Leave the timestamp out so reruns are byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Write the resolved config to this path before running.
    #[arg(long, global = true)]
    emit_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hadamard loop geometry, holonomies and deviation from -iH0.
    Gate {
        #[command(flatten)]
        geometry: Geometry,
        /// Start of the x-loop base edge.
        #[arg(long)]
        ax: Option<f64>,
        /// Start of the y-loop base edge.
        #[arg(long)]
        ay: Option<f64>,
    },
    /// Monte Carlo fidelity, one CSV row per sample plus a mean row.
    Fidelity {
        #[command(flatten)]
        geometry: Geometry,
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Sweep l_x and mark local fidelity maxima.
    ScanLx {
        #[arg(long)]
        lx_min: Option<f64>,
        #[arg(long)]
        lx_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, value_parser = parse_spacing)]
        spacing: Option<Spacing>,
        #[arg(long)]
        ly: Option<f64>,
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Log-log slope of the mean infidelity against eps.
    OrderFit {
        #[command(flatten)]
        geometry: Geometry,
        #[command(flatten)]
        noise: NoiseArgs,
        /// Comma-separated error magnitudes.
        #[arg(long, value_delimiter = ',')]
        eps_list: Option<Vec<f64>>,
        /// Fail with exit 1 unless the slope lies within --tol of this.
        #[arg(long)]
        expect_slope: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check the truncated Fock-space oracle against the closed forms.
    VerifyOracle {
        #[command(flatten)]
        geometry: Geometry,
        /// Fock truncation.
        #[arg(long)]
        nf: Option<usize>,
        /// Path-ordering steps per edge.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        fd_step: Option<f64>,
        /// Comma-separated truncations of the convergence ladder.
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<usize>>,
        /// Number of seeded field-strength points.
        #[arg(long)]
        oracle_points: Option<usize>,
        /// Constant top-edge offset of the perturbed loop.
        #[arg(long)]
        oracle_eps: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct Geometry {
    #[arg(long)]
    lx: Option<f64>,
    #[arg(long)]
    ly: Option<f64>,
}

#[derive(Args, Debug)]
struct NoiseArgs {
    #[arg(long)]
    noise: Option<NoiseFamily>,
    #[arg(long)]
    eps: Option<f64>,
    /// Monte Carlo samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Profile grid points.
    #[arg(long)]
    grid: Option<usize>,
    /// Subtract the profile mean (`--zero-mean false` to keep it).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    zero_mean: Option<bool>,
    #[arg(long)]
    periods: Option<u32>,
    #[arg(long)]
    phase: Option<f64>,
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    match s {
        "lin" => Ok(Spacing::Lin),
        "log" => Ok(Spacing::Log),
        other => Err(format!("unknown spacing '{other}' (expected lin or log)")),
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl Geometry {
    fn apply(self, cfg: &mut ExperimentConfig) {
        set(&mut cfg.lx, self.lx);
        set(&mut cfg.ly, self.ly);
    }
}

impl NoiseArgs {
    fn apply(self, cfg: &mut ExperimentConfig) {
        set(&mut cfg.noise, self.noise);
        set(&mut cfg.eps, self.eps);
        set(&mut cfg.samples, self.samples);
        set(&mut cfg.grid, self.grid);
        set(&mut cfg.zero_mean, self.zero_mean);
        set(&mut cfg.periods, self.periods);
        set(&mut cfg.phase, self.phase);
    }
}

type Runner = fn(&ExperimentConfig) -> hadamard_core::Result<commands::Outcome>;

impl Command {
    fn apply(self, cfg: &mut ExperimentConfig) -> Runner {
        match self {
            Command::Gate { geometry, ax, ay } => {
                geometry.apply(cfg);
                set(&mut cfg.ax, ax);
                set(&mut cfg.ay, ay);
                commands::gate
            }
            Command::Fidelity { geometry, noise } => {
                geometry.apply(cfg);
                noise.apply(cfg);
                commands::fidelity
            }
            Command::ScanLx { lx_min, lx_max, points, spacing, ly, noise } => {
                set(&mut cfg.lx_min, lx_min);
                set(&mut cfg.lx_max, lx_max);
                set(&mut cfg.points, points);
                set(&mut cfg.spacing, spacing);
                set(&mut cfg.ly, ly);
                noise.apply(cfg);
                commands::scan
            }
            Command::OrderFit { geometry, noise, eps_list, expect_slope, tol } => {
                geometry.apply(cfg);
                noise.apply(cfg);
                set(&mut cfg.eps_list, eps_list);
                if expect_slope.is_some() {
                    cfg.expect_slope = expect_slope;
                }
                set(&mut cfg.tol, tol);
                commands::order_fit
            }
            Command::VerifyOracle { geometry, nf, steps, fd_step, ladder, oracle_points, oracle_eps } => {
                geometry.apply(cfg);
                set(&mut cfg.nf, nf);
                set(&mut cfg.steps, steps);
                set(&mut cfg.fd_step, fd_step);
                set(&mut cfg.ladder, ladder);
                set(&mut cfg.oracle_points, oracle_points);
                set(&mut cfg.oracle_eps, oracle_eps);
                commands::verify
            }
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    set(&mut cfg.seed, cli.seed);
    if cli.format.is_some() {
        cfg.format = cli.format;
    }
    if cli.out.is_some() {
        cfg.out = cli.out;
    }
    cfg.no_timestamp |= cli.no_timestamp;
    let runner = cli.command.apply(&mut cfg);

    if let Some(path) = &cli.emit_config {
        std::fs::write(path, cfg.to_toml())
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let outcome = runner(&cfg)?;
    let text = output::render(&outcome.artifact, &cfg, cfg.format.unwrap_or(outcome.default_format));
    output::emit(&text, &cfg)?;
    match outcome.verdict {
        Some(v) if !v.passed => Err(CliError { code: 1, message: v.summary }),
        _ => Ok(()),
    }
}
