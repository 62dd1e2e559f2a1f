//! Executes a [`RunConfig`].

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use anyhow::{Context, Result};
use quantum_domino::exact::ExactEngine;
use quantum_domino::metrics::{
    peak_metrics_with, series_with, uniform_grid, Engine, InitialState, PeakReport,
    PolarizationEvaluator, SeriesOptions,
};
use quantum_domino::{ChainSpec, DominoError};

use crate::config::{Format, Mode, RunConfig, UsageError};
use crate::export;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ValidationFailed,
}

/// 2 for usage and configuration errors, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<DominoError>() {
        Some(
            DominoError::InvalidSpec(_)
            | DominoError::OutOfRange { .. }
            | DominoError::NotNormalized { .. }
            | DominoError::CapExceeded { .. }
            | DominoError::MissingCoupling
            | DominoError::InvalidGrid(_)
            | DominoError::Unsupported(_),
        ) => 2,
        _ => 1,
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.mode {
        Mode::Simulate => simulate(cfg).map(|_| Outcome::Success),
        Mode::Validate => validate(cfg),
        Mode::Sweep | Mode::Peak => peaks(cfg).map(|_| Outcome::Success),
    }
}

fn chain_spec(cfg: &RunConfig, n: usize, engine: Engine) -> Result<ChainSpec> {
    let spec = ChainSpec::new(n, cfg.omega1)?;
    match (engine, cfg.j) {
        (_, Some(j)) => Ok(spec.with_coupling(j)?),
        (Engine::ExactRotframe, None) => Err(usage("the exact-rotframe engine needs --j")),
        _ => Ok(spec),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Svg => "svg",
    }
}

/// `<dir>/<stem>_snapshot_<i>_tau<τ>.<ext>`, with `i` counting from 1.
pub fn snapshot_path(out: &Path, index: usize, tau: f64, format: Format) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("series");
    out.with_file_name(format!(
        "{stem}_snapshot_{}_tau{}.{}",
        index + 1,
        export::round12(tau),
        extension(format)
    ))
}

fn simulate(cfg: &RunConfig) -> Result<()> {
    let n = cfg.n_sites[0];
    let engine = cfg.engine.unwrap_or(Engine::Subspace);
    let spec = chain_spec(cfg, n, engine)?;
    if !cfg.snapshots.is_empty() && cfg.out.is_none() && cfg.format != Format::Json {
        return Err(usage(
            "snapshots are written next to --out, which is missing",
        ));
    }
    let grid = uniform_grid(cfg.tau_max_for(n), cfg.tau_step)?;
    let options = SeriesOptions {
        initial: cfg.initial,
        snapshots: cfg.snapshots.clone(),
        exact: ExactEngine::with_cap(cfg.cap),
    };
    let series = series_with(&spec, &grid, engine, &options)?;

    let main = match cfg.format {
        Format::Csv => export::series_csv(&series),
        Format::Json => export::series_json(&series),
        Format::Svg => export::series_svg(&series),
    };
    let Some(out) = &cfg.out else {
        print!("{main}");
        return Ok(());
    };
    write_file(out, &main)?;
    if cfg.format == Format::Json {
        return Ok(());
    }
    for (i, snap) in series.snapshots.iter().enumerate() {
        let body = match cfg.format {
            Format::Svg => export::snapshot_svg(snap),
            _ => export::snapshot_csv(snap),
        };
        write_file(&snapshot_path(out, i, snap.tau, cfg.format), &body)?;
    }
    Ok(())
}

/// Largest difference in any site polarization or the total over the grid.
fn max_deviation(
    a: &PolarizationEvaluator,
    b: &PolarizationEvaluator,
    grid: &[f64],
) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &tau in grid {
        let (pa, pb) = (a.at(tau)?, b.at(tau)?);
        worst = worst.max((pa.total - pb.total).abs());
        for (x, y) in pa.sites.iter().zip(&pb.sites) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

fn validate(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n_sites[0];
    let targets: Vec<Engine> = match cfg.engine {
        Some(Engine::Subspace) => {
            return Err(usage("validate compares subspace against another engine"))
        }
        Some(e) => vec![e],
        None => {
            let mut v = Vec::new();
            if n <= cfg.cap {
                v.push(Engine::ExactSecular);
            }
            if cfg.initial == InitialState::Psi1 {
                v.push(Engine::ClosedForm);
            }
            if v.is_empty() {
                return Err(usage(format!(
                    "nothing to compare for N = {n} above the exact cap with this initial state"
                )));
            }
            v
        }
    };
    if targets.contains(&Engine::ExactRotframe) && cfg.tolerance.is_none() {
        return Err(usage(
            "rotating-frame validation needs an explicit --tolerance",
        ));
    }
    let tolerance = cfg.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let grid = uniform_grid(cfg.tau_max_for(n), cfg.tau_step)?;
    let exact = ExactEngine::with_cap(cfg.cap);

    let mut outcome = Outcome::Success;
    for engine in targets {
        let spec = chain_spec(cfg, n, engine)?;
        let reference = PolarizationEvaluator::new(&spec, Engine::Subspace, cfg.initial, &exact)?;
        let other = PolarizationEvaluator::new(&spec, engine, cfg.initial, &exact)?;
        let dev = max_deviation(&reference, &other, &grid)?;
        let ok = dev <= tolerance;
        if !ok {
            outcome = Outcome::ValidationFailed;
        }
        println!(
            "N = {n}, subspace vs {}: max deviation {dev:.3e}, tolerance {tolerance:e}, {}",
            engine.tag(),
            if ok { "ok" } else { "FAILED" }
        );
    }
    Ok(outcome)
}

fn peaks(cfg: &RunConfig) -> Result<()> {
    if cfg.initial != InitialState::Psi1 {
        return Err(usage("peak metrics are defined for the psi1 start"));
    }
    if cfg.format == Format::Svg {
        return Err(usage("peak reports are written as csv or json"));
    }
    let engine = cfg.engine.unwrap_or(Engine::Subspace);
    let exact = ExactEngine::with_cap(cfg.cap);
    let specs = cfg
        .n_sites
        .iter()
        .map(|&n| chain_spec(cfg, n, engine))
        .collect::<Result<Vec<_>>>()?;
    // One worker per chain length; results keep the input order.
    let reports: Vec<PeakReport> = thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(|| peak_metrics_with(spec, engine, &exact)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("peak worker panicked"))
            .collect::<quantum_domino::Result<Vec<_>>>()
    })?;
    let body = match cfg.format {
        Format::Json => export::peaks_json(&reports, engine.tag(), cfg.omega1),
        _ => export::peaks_csv(&reports),
    };
    match &cfg.out {
        Some(out) => write_file(out, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
