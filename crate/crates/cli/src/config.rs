//! Command-line parsing and validation into a [`RunConfig`].

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quantum_domino::exact::DEFAULT_CAP;
use quantum_domino::metrics::{Engine, InitialState};
use quantum_domino::C64;

#[derive(Debug, Parser)]
#[command(
    name = "domino",
    version,
    about = "Quantum domino simulator for driven Ising chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polarization series and optional per-site snapshots.
    Simulate(CommonArgs),
    /// Compare the subspace engine against another engine.
    Validate(CommonArgs),
    /// Peak report for each chain length in `--n`.
    Sweep(CommonArgs),
    /// Peak report for one chain length.
    Peak(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Chain length; a comma-separated list for `sweep`.
    #[arg(long = "n", value_name = "N[,N…]", required = true)]
    pub n: String,
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,
    /// Default: 1.5 N.
    #[arg(long = "tau-max")]
    pub tau_max: Option<f64>,
    #[arg(long = "tau-step", default_value_t = 0.1)]
    pub tau_step: f64,
    /// Comma-separated snapshot times.
    #[arg(long, value_delimiter = ',', value_name = "T1,T2,…")]
    pub snapshots: Vec<f64>,
    /// psi0, psi1 or super:a_re,a_im,b_re,b_im
    #[arg(long, default_value = "psi1")]
    pub initial: String,
    #[arg(long, default_value_t = 1.0)]
    pub omega1: f64,
    /// Ising coupling, needed by the rotating-frame engine.
    #[arg(long = "j")]
    pub j: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Validation tolerance; required when validating the rotating frame.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Largest chain the exact engines accept.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Subspace,
    ClosedForm,
    ExactSecular,
    ExactRotframe,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Subspace => Engine::Subspace,
            EngineArg::ClosedForm => Engine::ClosedForm,
            EngineArg::ExactSecular => Engine::ExactSecular,
            EngineArg::ExactRotframe => Engine::ExactRotframe,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Simulate,
    Validate,
    Sweep,
    Peak,
}

/// A bad flag value or an inconsistent combination of flags.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub n_sites: Vec<usize>,
    /// `None` lets `validate` pick its default comparisons.
    pub engine: Option<Engine>,
    pub tau_max: Option<f64>,
    pub tau_step: f64,
    pub snapshots: Vec<f64>,
    pub initial: InitialState,
    pub omega1: f64,
    pub j: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tolerance: Option<f64>,
    pub cap: usize,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let (mode, args) = match cli.command {
            Command::Simulate(a) => (Mode::Simulate, a),
            Command::Validate(a) => (Mode::Validate, a),
            Command::Sweep(a) => (Mode::Sweep, a),
            Command::Peak(a) => (Mode::Peak, a),
        };
        let n_sites = parse_sizes(&args.n)?;
        if mode != Mode::Sweep && n_sites.len() != 1 {
            return usage("--n takes a single value except for sweep");
        }
        if !(args.tau_step > 0.0 && args.tau_step.is_finite()) {
            return usage(format!(
                "--tau-step must be positive, got {}",
                args.tau_step
            ));
        }
        if let Some(t) = args.tau_max {
            if !(t >= args.tau_step && t.is_finite()) {
                return usage(format!("--tau-max must be at least --tau-step, got {t}"));
            }
        }
        if args.snapshots.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return usage("snapshot times must be finite and non-negative");
        }
        if !(args.omega1 > 0.0 && args.omega1.is_finite()) {
            return usage(format!("--omega1 must be positive, got {}", args.omega1));
        }
        if let Some(tol) = args.tolerance {
            if tol.is_nan() || tol <= 0.0 {
                return usage(format!("--tolerance must be positive, got {tol}"));
            }
        }
        let engine = args.engine.map(Engine::from);
        if engine.is_some_and(|e| e.is_exact()) {
            if let Some(&n) = n_sites.iter().find(|&&n| n > args.cap) {
                return usage(format!(
                    "exact engines are capped at {} spins, got N = {n}",
                    args.cap
                ));
            }
        }
        if engine == Some(Engine::ExactRotframe) && args.j.is_none() {
            return usage("the exact-rotframe engine needs --j");
        }
        Ok(Self {
            mode,
            n_sites,
            engine,
            tau_max: args.tau_max,
            tau_step: args.tau_step,
            snapshots: args.snapshots,
            initial: parse_initial(&args.initial)?,
            omega1: args.omega1,
            j: args.j,
            out: args.out,
            format: args.format,
            tolerance: args.tolerance,
            cap: args.cap,
        })
    }

    pub fn tau_max_for(&self, n: usize) -> f64 {
        self.tau_max.unwrap_or(1.5 * n as f64)
    }
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, UsageError> {
    s.split(',')
        .map(|item| {
            let n: usize = item
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("invalid chain length '{item}'")))?;
            if n < 3 {
                return usage(format!("chain length must be at least 3, got {n}"));
            }
            Ok(n)
        })
        .collect()
}

pub fn parse_initial(s: &str) -> Result<InitialState, UsageError> {
    match s {
        "psi0" => Ok(InitialState::Psi0),
        "psi1" => Ok(InitialState::Psi1),
        _ => {
            let Some(rest) = s.strip_prefix("super:") else {
                return usage(format!("unknown initial state '{s}'"));
            };
            let parts = rest
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| UsageError(format!("invalid superposition '{rest}'")))?;
            let [a_re, a_im, b_re, b_im] = parts[..] else {
                return usage("a superposition needs a_re,a_im,b_re,b_im");
            };
            Ok(InitialState::Superposition {
                a: C64::new(a_re, a_im),
                b: C64::new(b_re, b_im),
            })
        }
    }
}
