//! Quantities derived from the polarization dynamics: time series, the
//! extremal polarization change and its amplification/contrast, and the
//! position and width of the travelling domain wall.

use std::fmt;
use std::str::FromStr;

use crate::chain::{
    observables_unchecked, ChainSpec, DominoAmplitudes, Polarizations, SubspacePropagator,
};
use crate::closed_form::ClosedForm;
use crate::error::{DominoError, Result};
use crate::exact::{site_polarizations, DenseEvolver, DenseState, ExactEngine};
use crate::C64;

/// Which engine produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Spectral propagation in the flipped-prefix subspace.
    Subspace,
    /// The explicit trigonometric sums (`Ψ_1` start only).
    ClosedForm,
    /// Full `2^N` evolution under the secular Hamiltonian.
    ExactSecular,
    /// Full `2^N` evolution under the rotating-frame Ising Hamiltonian.
    ExactRotframe,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::Subspace,
        Engine::ClosedForm,
        Engine::ExactSecular,
        Engine::ExactRotframe,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Engine::Subspace => "subspace",
            Engine::ClosedForm => "closed-form",
            Engine::ExactSecular => "exact-secular",
            Engine::ExactRotframe => "exact-rotframe",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Engine::ExactSecular | Engine::ExactRotframe)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Engine {
    type Err = DominoError;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.tag() == s)
            .ok_or_else(|| DominoError::Unsupported(format!("unknown engine '{s}'")))
    }
}

/// Initial state of a run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum InitialState {
    Psi0,
    #[default]
    Psi1,
    /// `a Ψ_0 + b Ψ_1`.
    Superposition {
        a: C64,
        b: C64,
    },
}

impl InitialState {
    pub fn amplitudes(&self, spec: &ChainSpec) -> Result<DominoAmplitudes> {
        match *self {
            InitialState::Psi0 => DominoAmplitudes::basis(spec, 0),
            InitialState::Psi1 => DominoAmplitudes::basis(spec, 1),
            InitialState::Superposition { a, b } => DominoAmplitudes::superposition(spec, a, b),
        }
    }
}

/// Evaluates polarizations at arbitrary `τ` for one engine and initial state.
#[derive(Debug, Clone)]
pub enum PolarizationEvaluator {
    Subspace {
        propagator: SubspacePropagator,
        start: DominoAmplitudes,
    },
    ClosedForm(ClosedForm),
    Exact {
        evolver: DenseEvolver,
        start: DenseState,
        omega1: f64,
    },
}

impl PolarizationEvaluator {
    pub fn new(
        spec: &ChainSpec,
        engine: Engine,
        initial: InitialState,
        exact: &ExactEngine,
    ) -> Result<Self> {
        let start = initial.amplitudes(spec)?;
        Ok(match engine {
            Engine::Subspace => Self::Subspace {
                propagator: SubspacePropagator::new(spec),
                start,
            },
            Engine::ClosedForm => {
                if initial != InitialState::Psi1 {
                    return Err(DominoError::Unsupported(
                        "the closed-form engine only covers the Ψ_1 initial state".into(),
                    ));
                }
                Self::ClosedForm(ClosedForm::new(spec))
            }
            Engine::ExactSecular | Engine::ExactRotframe => {
                let h = if engine == Engine::ExactSecular {
                    exact.build_secular_full(spec)?
                } else {
                    exact.build_rotframe(spec)?
                };
                Self::Exact {
                    evolver: DenseEvolver::new(&h)?,
                    start: DenseState::from_domino(&start),
                    omega1: spec.omega1(),
                }
            }
        })
    }

    pub fn at(&self, tau: f64) -> Result<Polarizations> {
        match self {
            Self::Subspace { propagator, start } => {
                Ok(observables_unchecked(&propagator.propagate(start, tau)?))
            }
            Self::ClosedForm(cf) => {
                let sites = cf.sites(tau);
                Ok(Polarizations {
                    total: cf.total(tau),
                    sites,
                })
            }
            Self::Exact {
                evolver,
                start,
                omega1,
            } => Ok(site_polarizations(&evolver.evolve(start, tau / omega1)?)),
        }
    }

    pub fn total(&self, tau: f64) -> Result<f64> {
        match self {
            Self::ClosedForm(cf) => Ok(cf.total(tau)),
            _ => Ok(self.at(tau)?.total),
        }
    }
}

/// Per-site polarizations at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub tau: f64,
    pub sites: Vec<f64>,
}

/// `⟨P(τ)⟩` and `ΔP(τ) = ⟨P(τ)⟩ - ⟨P(0)⟩` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationSeries {
    pub engine: Engine,
    pub n_sites: usize,
    pub omega1: f64,
    pub tau_grid: Vec<f64>,
    pub total_p: Vec<f64>,
    pub delta_p: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOptions {
    pub initial: InitialState,
    /// Times at which full per-site profiles are recorded.
    pub snapshots: Vec<f64>,
    pub exact: ExactEngine,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            initial: InitialState::Psi1,
            snapshots: Vec::new(),
            exact: ExactEngine::default(),
        }
    }
}

/// Uniform grid `0, step, 2·step, …` up to `tau_max` (inclusive within
/// rounding).
pub fn uniform_grid(tau_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) || !(tau_max >= 0.0 && tau_max.is_finite()) {
        return Err(DominoError::InvalidGrid(format!(
            "need step > 0 and tau_max >= 0, got step {step}, tau_max {tau_max}"
        )));
    }
    let count = (tau_max / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| i as f64 * step).collect())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    let first = *grid
        .first()
        .ok_or_else(|| DominoError::InvalidGrid("empty grid".into()))?;
    if first != 0.0 {
        return Err(DominoError::InvalidGrid(format!(
            "grid must start at 0, starts at {first}"
        )));
    }
    if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DominoError::InvalidGrid(
            "grid must be finite and strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Series from `Ψ_1` with no snapshots.
pub fn series(spec: &ChainSpec, tau_grid: &[f64], engine: Engine) -> Result<PolarizationSeries> {
    series_with(spec, tau_grid, engine, &SeriesOptions::default())
}

pub fn series_with(
    spec: &ChainSpec,
    tau_grid: &[f64],
    engine: Engine,
    options: &SeriesOptions,
) -> Result<PolarizationSeries> {
    check_grid(tau_grid)?;
    let eval = PolarizationEvaluator::new(spec, engine, options.initial, &options.exact)?;
    let total_p = tau_grid
        .iter()
        .map(|&tau| eval.total(tau))
        .collect::<Result<Vec<_>>>()?;
    let delta_p = total_p.iter().map(|p| p - total_p[0]).collect();
    let snapshots = options
        .snapshots
        .iter()
        .map(|&tau| {
            Ok(Snapshot {
                tau,
                sites: eval.at(tau)?.sites,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolarizationSeries {
        engine,
        n_sites: spec.n_sites(),
        omega1: spec.omega1(),
        tau_grid: tau_grid.to_vec(),
        total_p,
        delta_p,
        snapshots,
    })
}

/// Extremal polarization change of the `Ψ_1`-seeded wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakReport {
    pub n_sites: usize,
    pub tau_star: f64,
    /// Signed; negative for the flipping wave.
    pub delta_p_star: f64,
    /// `|ΔP*| / 2`.
    pub alpha: f64,
    /// `|ΔP*| / P(0)` with `P(0) = N - 2`.
    pub contrast: f64,
}

pub const PEAK_COARSE_STEP: f64 = 0.25;
pub const PEAK_FINE_STEP: f64 = 0.01;
/// Coarse scan covers `τ ∈ [0, 1.5N]`.
pub const PEAK_SCAN_FACTOR: f64 = 1.5;

/// Peak metrics with the subspace engine.
pub fn peak_metrics(spec: &ChainSpec) -> Result<PeakReport> {
    peak_metrics_with(spec, Engine::Subspace, &ExactEngine::default())
}

/// Coarse scan at step 0.25, refinement at step 0.01 around the coarse
/// extremum, then a parabola through the three best fine samples.
pub fn peak_metrics_with(
    spec: &ChainSpec,
    engine: Engine,
    exact: &ExactEngine,
) -> Result<PeakReport> {
    let eval = PolarizationEvaluator::new(spec, engine, InitialState::Psi1, exact)?;
    let p0 = eval.total(0.0)?;
    let delta = |tau: f64| eval.total(tau).map(|p| p - p0);

    let coarse_count =
        (PEAK_SCAN_FACTOR * spec.n_sites() as f64 / PEAK_COARSE_STEP).round() as usize;
    let mut best = (0.0_f64, 0.0_f64);
    for i in 0..=coarse_count {
        let tau = i as f64 * PEAK_COARSE_STEP;
        let d = delta(tau)?;
        if d.abs() > best.1.abs() {
            best = (tau, d);
        }
    }

    let start = (best.0 - PEAK_COARSE_STEP).max(0.0);
    let fine_count = ((best.0 + PEAK_COARSE_STEP - start) / PEAK_FINE_STEP).round() as usize;
    let fine = (0..=fine_count)
        .map(|i| {
            let tau = start + i as f64 * PEAK_FINE_STEP;
            delta(tau).map(|d| (tau, d))
        })
        .collect::<Result<Vec<_>>>()?;
    let idx = fine
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.abs().total_cmp(&b.1 .1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);

    let (mut tau_star, mut delta_star) = fine[idx];
    if idx > 0 && idx + 1 < fine.len() {
        let (left, mid, right) = (fine[idx - 1].1, fine[idx].1, fine[idx + 1].1);
        let curvature = left - 2.0 * mid + right;
        if curvature != 0.0 {
            let shift = (0.5 * (left - right) / curvature).clamp(-1.0, 1.0);
            tau_star += shift * PEAK_FINE_STEP;
            delta_star = mid - 0.125 * (left - right) * (left - right) / curvature;
        }
    }

    let magnitude = delta_star.abs();
    Ok(PeakReport {
        n_sites: spec.n_sites(),
        tau_star,
        delta_p_star: delta_star,
        alpha: 0.5 * magnitude,
        contrast: magnitude / (spec.n_sites() as f64 - 2.0),
    })
}

/// Location and width of the domain wall in a per-site profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveProfile {
    /// Interpolated site coordinate (1-based) of the rightmost zero crossing;
    /// 0 when the profile never changes sign.
    pub front: f64,
    /// Distance between the −0.9 and +0.9 crossings bracketing the front; 0
    /// when either threshold is never reached.
    pub width: f64,
}

pub const WALL_THRESHOLD: f64 = 0.9;

/// Interpolated positions where the profile crosses `level`, left to right.
fn crossings(p: &[f64], level: f64) -> Vec<f64> {
    p.windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            let (s0, s1) = (w[0] - level, w[1] - level);
            ((s0 < 0.0) != (s1 < 0.0)).then(|| (i + 1) as f64 + s0 / (s0 - s1))
        })
        .collect()
}

pub fn wavefront_and_width(p: &[f64]) -> WaveProfile {
    let Some(&front) = crossings(p, 0.0).last() else {
        return WaveProfile {
            front: 0.0,
            width: 0.0,
        };
    };
    let lower = crossings(p, -WALL_THRESHOLD)
        .into_iter()
        .rfind(|&x| x <= front);
    let upper = crossings(p, WALL_THRESHOLD)
        .into_iter()
        .find(|&x| x >= front);
    let width = match (lower, upper) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0.0,
    };
    WaveProfile { front, width }
}

/// Ordinary least-squares line and its coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(DominoError::InvalidGrid(
            "linear fit needs two or more paired samples".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// `R²` of `ΔP(τ)` against a line on `τ ∈ [0.2N, 0.8N]`.
pub fn front_linearity(series: &PolarizationSeries) -> Result<LinearFit> {
    let n = series.n_sites as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = series
        .tau_grid
        .iter()
        .zip(&series.delta_p)
        .filter(|(t, _)| **t >= 0.2 * n && **t <= 0.8 * n)
        .map(|(t, d)| (*t, *d))
        .unzip();
    linear_fit(&xs, &ys)
}
