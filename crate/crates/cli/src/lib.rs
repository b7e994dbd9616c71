//! Library half of the `phasespace` command line tool.
//!
//! [`run`] parses arguments and dispatches; the binary only prints and
//! maps the result to an exit code (0 pass, 1 invariant failure, 2 usage).

pub mod commands;
pub mod config;
pub mod random;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use phasespace::io::Format;
use thiserror::Error;

use commands::{Example, FactorizeArgs, RepsArgs};
use config::{Overrides, RunConfig};
use suites::Suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error(transparent)]
    Grid(#[from] phasespace::GridError),
    #[error(transparent)]
    Io(#[from] phasespace::IoError),
    #[error(transparent)]
    Factorize(#[from] phasespace::FactorizeError),
    #[error(transparent)]
    Reps(#[from] phasespace_reps::RepsError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "phasespace", version, about = "Phase-space quantum mechanics on a discrete grid")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Flat `key = value` file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for arrays and the JSON report.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Grid size (even).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Position step.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dx: Option<f64>,
    /// Number of Hermite functions available to `hermite:<k>`.
    #[arg(long = "r-max", global = true)]
    pub r_max: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner function of a state: `hermite:k`, `0.6*hermite:0 + 0.8i*hermite:1`, or `file:PATH`.
    Wigner { state: String },
    /// Run an invariant suite.
    Check {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Recover the symbol of a Gaussian alpha kernel.
    Factorize {
        #[arg(long, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: i8,
        #[arg(long, default_value_t = 32)]
        grid_n: usize,
        /// Reconstruct even when the gate refuses the kernel.
        #[arg(long = "override")]
        override_gate: bool,
    },
    /// Factorise the generators of a symmetry group.
    Reps {
        #[arg(value_enum, default_value = "all")]
        example: Example,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hbar: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mass: String,
        /// Parameter of the second sp(2) representation.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
    },
    /// Star products of basis functions, numerically and symbolically.
    StarDemo,
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            dx: self.dx,
            r_max: self.r_max,
            tol: self.tol,
            out: self.out.clone(),
            format: self.format,
            seed: self.seed,
        }
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let cfg = RunConfig::load(cli.global.config.as_deref(), &cli.global.overrides())?;
    log::debug!("config {cfg:?}");
    match &cli.command {
        Command::Wigner { state } => commands::cmd_wigner(state, &cfg),
        Command::Check { suite } => commands::cmd_check(*suite, &cfg),
        Command::Factorize { tau, sigma, epsilon, grid_n, override_gate } => commands::cmd_factorize(
            FactorizeArgs { tau: *tau, sigma: *sigma, epsilon: *epsilon, grid_n: *grid_n, override_gate: *override_gate },
            &cfg,
        ),
        Command::Reps { example, hbar, mass, a } => {
            commands::cmd_reps(&RepsArgs { example: *example, hbar: hbar.clone(), mass: mass.clone(), a: a.clone() }, &cfg)
        }
        Command::StarDemo => commands::cmd_star_demo(&cfg),
    }
}

/// What the binary would print and return, without touching the process.
#[derive(Debug)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S>(args: I) -> RunResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunResult { code, stdout: text, stderr: String::new() }
            } else {
                RunResult { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => RunResult { code: if o.passed { 0 } else { 1 }, stdout: o.json, stderr: String::new() },
        Err(e) => RunResult { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
