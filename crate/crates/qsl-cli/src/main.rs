//! `qsl`: plot-ready data for quantum-speed-limit figures and seeded
//! verification suites. No rendering here; every command emits CSV or JSON
//! that is byte-stable for a given seed, so outputs can be golden-filed.

// Validation uses `!(x > 0.0)` so NaN fails alongside non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;
mod statefile;

use std::path::PathBuf;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use config::{Format, Units};

/// Exit-code contract: 0 success, 1 property violation, 2 internal
/// incompatibility, 64 usage, 65 data.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
    Violation,
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Violation => 1,
            CliError::Internal(_) => 2,
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Internal(m) => m,
            CliError::Violation => "verification found violations",
        }
    }
}

const LONG_ABOUT: &str = "\
Quantum-speed-limit toolkit: tabulates the bounding functions alpha and \
beta, maps forbidden regions, lower-bounds separable slowdown, verifies \
the underlying inequalities on seeded random instances, and evolves states \
from JSON files.

Defaults: --seed 0 (QSL_SEED env as fallback), --eps-resolution 101, \
--format csv, --units natural. A JSON config file (--config) may set \
{\"seed\", \"eps_resolution\", \"grid_ladder\", \"output_format\", \
\"units\"}; command-line flags override it. Times are in hbar = 1 units \
unless --units pi-hbar-over-2e rescales them by 2E/pi.";

#[derive(Parser)]
#[command(name = "qsl", version, about = "Quantum-speed-limit tables, regions, and verification", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config file; flags override its fields
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Seed for every randomized grid and suite
    #[arg(long, global = true, env = "QSL_SEED")]
    seed: Option<u64>,

    /// Number of eps samples for tabulating commands (>= 2)
    #[arg(long, global = true, value_name = "N")]
    eps_resolution: Option<usize>,

    /// Output file; stdout when omitted
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Time units in output columns
    #[arg(long, global = true, value_enum)]
    units: Option<Units>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the bounding functions alpha and beta over [0, 1] (figure 1)
    ///
    /// Columns: eps, alpha_lower, alpha_err, alpha_upper, beta, beta_sq.
    /// The lower alpha comes from the seeded grid reconstruction with its
    /// extrapolation error; the upper from the closed-form construction.
    Bounds,

    /// Map the forbidden region for given E, dE with a two-level overlay (figure 2)
    ///
    /// Columns: t, floor_alpha, floor_beta, floor, P_omega. P_omega is the
    /// survival of the two-level state with weight xi^2 scaled to mean
    /// energy E; where it first reaches --eps is reported as the touch
    /// point (JSON field, stderr note in CSV mode).
    Forbid {
        /// Mean energy above the ground level
        #[arg(long)]
        e: f64,
        /// Energy spread
        #[arg(long)]
        de: f64,
        /// Survival level whose touch point is marked
        #[arg(long, default_value_t = 0.30)]
        eps: f64,
        /// Excited-amplitude weight of the overlay state
        #[arg(long, default_value_t = 0.5)]
        xi: f64,
        /// Number of time samples over [0, T0]
        #[arg(long, default_value_t = 201)]
        steps: usize,
    },

    /// Lower-bound the slowdown ratio of homogeneous separable states (figure 7)
    ///
    /// Columns: eps, r_lower, branch; rows cover [0, 1) and the eps = 0 row
    /// equals sqrt(m).
    Ratio {
        /// Number of subsystems (>= 2)
        #[arg(long)]
        m: usize,
    },

    /// Run seeded inequality suites; exit 1 on any violation
    ///
    /// Emits a JSON report with one margin per check regardless of
    /// --format. Suites: forbidden (floor on random states), derivative
    /// (envelope + cosine floor), convexity and subadditivity (bounding
    /// function surfaces), mixture (purified fidelity bound), composite
    /// (product law, ratio floor, entangled speedup), all.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },

    /// Evolve a state file and tabulate survival or fidelity
    ///
    /// Pure and product states yield t, P; density matrices yield the
    /// Uhlmann fidelity as t, F. The file is JSON: {"levels",
    /// "amplitudes_re", "amplitudes_im"} for a pure state; {"probs",
    /// "states"} for a mixture; {"factors"} or {"joint": {"spectra",
    /// "amplitudes_re", "amplitudes_im"}} for composites (joint amplitudes
    /// row-major, last subsystem fastest). Levels may sit above zero; they
    /// are shifted so the ground level is 0. Amplitudes are normalized on
    /// load.
    Evolve {
        /// Path to the JSON state file
        #[arg(long, value_name = "PATH")]
        state_file: PathBuf,
        /// End of the time window
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        /// Number of uniform intervals (rows = steps + 1)
        #[arg(long, default_value_t = 500)]
        steps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Forbidden,
    Derivative,
    Convexity,
    Subadditivity,
    Mixture,
    Composite,
    All,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = config::resolve(
        cli.config.as_deref(),
        cli.seed,
        cli.eps_resolution,
        cli.format,
        cli.units,
    )?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Bounds => commands::bounds(&cfg, out),
        Command::Forbid {
            e,
            de,
            eps,
            xi,
            steps,
        } => commands::forbid(e, de, eps, xi, steps, &cfg, out),
        Command::Ratio { m } => commands::ratio(m, &cfg, out),
        Command::Verify { suite } => commands::verify(suite, &cfg, out),
        Command::Evolve {
            state_file,
            t_max,
            steps,
        } => commands::evolve(&state_file, t_max, steps, &cfg, out),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            exit(code);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("qsl: {}", err.message());
            exit(err.code());
        }
    }
}
