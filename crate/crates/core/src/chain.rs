//! The flipped-prefix subspace and its analytic engine.
//!
//! `Ψ_k` denotes the product state with spins `1..=k` flipped (`σᶻ = -1`) and
//! the rest up. The secular Hamiltonian maps `Ψ_k` to `(ω₁/2)(Ψ_{k-1} + Ψ_{k+1})`
//! inside the chain, except that `Ψ_0` and `Ψ_N` are annihilated and `Ψ_1`
//! only couples forward. The dynamical block on `Ψ_1..Ψ_{N-1}` is therefore
//! tridiagonal Toeplitz with zero diagonal and off-diagonal `ω₁/2`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{DominoError, Result};
use crate::C64;

/// Tolerance on `Σ|c_k|² - 1` accepted for input states.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Sign of the resonant drive. A 180° phase shift of the irradiation flips the
/// sign of the secular Hamiltonian and runs the dynamics backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrivePhase {
    #[default]
    Normal,
    Reversed,
}

impl DrivePhase {
    pub fn sign(self) -> f64 {
        match self {
            DrivePhase::Normal => 1.0,
            DrivePhase::Reversed => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            DrivePhase::Normal => DrivePhase::Reversed,
            DrivePhase::Reversed => DrivePhase::Normal,
        }
    }
}

/// Chain parameters shared by every engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    n_sites: usize,
    omega1: f64,
    j_coupling: Option<f64>,
    omega0: Option<f64>,
    phase: DrivePhase,
}

impl ChainSpec {
    /// `n_sites >= 3` spins driven with amplitude `omega1 > 0`.
    pub fn new(n_sites: usize, omega1: f64) -> Result<Self> {
        if n_sites < 3 {
            return Err(DominoError::InvalidSpec(format!(
                "chain needs at least 3 spins, got {n_sites}"
            )));
        }
        if !(omega1.is_finite() && omega1 > 0.0) {
            return Err(DominoError::InvalidSpec(format!(
                "drive amplitude omega1 must be positive and finite, got {omega1}"
            )));
        }
        Ok(Self {
            n_sites,
            omega1,
            j_coupling: None,
            omega0: None,
            phase: DrivePhase::Normal,
        })
    }

    /// Sets the Ising constant used by the rotating-frame and
    /// interaction-picture oracles.
    pub fn with_coupling(mut self, j: f64) -> Result<Self> {
        if !(j.is_finite() && j > 0.0) {
            return Err(DominoError::InvalidSpec(format!(
                "coupling J must be positive and finite, got {j}"
            )));
        }
        self.j_coupling = Some(j);
        Ok(self)
    }

    /// Records the Zeeman frequency. Nothing consumes it.
    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = Some(omega0);
        self
    }

    /// Same chain with the drive phase shifted by 180°.
    pub fn reversed(mut self) -> Self {
        self.phase = self.phase.flipped();
        self
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// `±ω₁` depending on the drive phase.
    pub fn signed_omega1(&self) -> f64 {
        self.phase.sign() * self.omega1
    }

    pub fn phase(&self) -> DrivePhase {
        self.phase
    }

    pub fn j_coupling(&self) -> Option<f64> {
        self.j_coupling
    }

    pub fn require_coupling(&self) -> Result<f64> {
        self.j_coupling.ok_or(DominoError::MissingCoupling)
    }

    pub fn omega0(&self) -> Option<f64> {
        self.omega0
    }
}

/// Amplitudes `c_0..=c_N` over the flipped-prefix states.
#[derive(Debug, Clone, PartialEq)]
pub struct DominoAmplitudes {
    c: Vec<C64>,
}

impl DominoAmplitudes {
    /// Validates length `N + 1` and unit norm.
    pub fn new(spec: &ChainSpec, c: Vec<C64>) -> Result<Self> {
        let expected = spec.n_sites + 1;
        if c.len() != expected {
            return Err(DominoError::DimensionMismatch {
                expected,
                found: c.len(),
            });
        }
        let state = Self { c };
        state.check_norm()?;
        Ok(state)
    }

    /// The basis state `Ψ_k`.
    pub fn basis(spec: &ChainSpec, k: usize) -> Result<Self> {
        check_index(spec, k)?;
        let mut c = vec![C64::new(0.0, 0.0); spec.n_sites + 1];
        c[k] = C64::new(1.0, 0.0);
        Ok(Self { c })
    }

    /// `a Ψ_0 + b Ψ_1`.
    pub fn superposition(spec: &ChainSpec, a: C64, b: C64) -> Result<Self> {
        let mut c = vec![C64::new(0.0, 0.0); spec.n_sites + 1];
        c[0] = a;
        c[1] = b;
        Self::new(spec, c)
    }

    pub fn n_sites(&self) -> usize {
        self.c.len() - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.c
    }

    pub fn amplitude(&self, k: usize) -> C64 {
        self.c[k]
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.c.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.c
            .iter()
            .zip(&other.c)
            .map(|(x, y)| x.conj() * y)
            .sum::<C64>()
            .norm_sqr()
    }

    fn check_norm(&self) -> Result<()> {
        let norm_sq = self.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(DominoError::NotNormalized { norm_sq });
        }
        Ok(())
    }

    fn check_against(&self, spec: &ChainSpec) -> Result<()> {
        if self.n_sites() != spec.n_sites {
            return Err(DominoError::DimensionMismatch {
                expected: spec.n_sites + 1,
                found: self.c.len(),
            });
        }
        self.check_norm()
    }
}

fn check_index(spec: &ChainSpec, k: usize) -> Result<()> {
    if k > spec.n_sites {
        return Err(DominoError::OutOfRange {
            what: "basis index k",
            value: k,
            min: 0,
            max: spec.n_sites,
        });
    }
    Ok(())
}

/// `H_secular Ψ_k` expanded in the `Ψ` basis as `(index, coefficient)` pairs.
pub fn secular_action(k: usize, spec: &ChainSpec) -> Result<Vec<(usize, f64)>> {
    check_index(spec, k)?;
    let n = spec.n_sites;
    let half = 0.5 * spec.signed_omega1();
    let out = if k == 0 || k == n {
        vec![]
    } else if k == 1 {
        vec![(2, half)]
    } else if k == n - 1 {
        vec![(n - 2, half)]
    } else {
        vec![(k - 1, half), (k + 1, half)]
    };
    Ok(out)
}

/// Dense `(N-1)×(N-1)` block of the secular Hamiltonian on `Ψ_1..Ψ_{N-1}`,
/// assembled from [`secular_action`]. Row/column `i` is `Ψ_{i+1}`.
pub fn subspace_hamiltonian(spec: &ChainSpec) -> DMatrix<f64> {
    let dim = spec.n_sites - 1;
    let mut h = DMatrix::zeros(dim, dim);
    for k in 1..spec.n_sites {
        for (target, coeff) in secular_action(k, spec).expect("k in range") {
            h[(target - 1, k - 1)] += coeff;
        }
    }
    h
}

/// Analytic eigensystem of the dynamical block.
///
/// `lambdas[p-1] = -ω₁ cos(pπ/N)` and `vectors[(k-1, p-1)] =
/// (-1)^{k-1} √(2/N) sin(pkπ/N)` for `p, k = 1..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceEigenSystem {
    pub lambdas: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl SubspaceEigenSystem {
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    /// `max |VᵀV - I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.vectors.transpose() * &self.vectors;
        let identity = DMatrix::<f64>::identity(self.dim(), self.dim());
        (gram - identity).amax()
    }

    /// `‖H v_p - λ_p v_p‖₂` against `block`, for 1-based `p`.
    pub fn residual(&self, block: &DMatrix<f64>, p: usize) -> f64 {
        let v = self.vectors.column(p - 1);
        (block * v - v * self.lambdas[p - 1]).norm()
    }
}

/// Closed-form eigensystem of the secular block (no numerical diagonalization).
pub fn eigen_system(spec: &ChainSpec) -> SubspaceEigenSystem {
    let n = spec.n_sites;
    let dim = n - 1;
    let nf = n as f64;
    let omega = spec.signed_omega1();
    let lambdas = DVector::from_fn(dim, |i, _| -omega * ((i + 1) as f64 * PI / nf).cos());
    let norm = (2.0 / nf).sqrt();
    let vectors = DMatrix::from_fn(dim, dim, |row, col| {
        let (k, p) = (row + 1, col + 1);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sign * norm * ((p * k) as f64 * PI / nf).sin()
    });
    SubspaceEigenSystem { lambdas, vectors }
}

/// Reusable spectral propagator: holds the eigensystem so repeated
/// evaluations at many `τ` cost `O(N²)` each.
#[derive(Debug, Clone)]
pub struct SubspacePropagator {
    spec: ChainSpec,
    eig: SubspaceEigenSystem,
}

impl SubspacePropagator {
    pub fn new(spec: &ChainSpec) -> Self {
        Self {
            spec: *spec,
            eig: eigen_system(spec),
        }
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn eigen(&self) -> &SubspaceEigenSystem {
        &self.eig
    }

    /// `c(τ) = V exp(-iΛτ/ω₁) Vᵀ c(0)` on the block; `c_0`, `c_N` untouched.
    pub fn propagate(&self, state: &DominoAmplitudes, tau: f64) -> Result<DominoAmplitudes> {
        state.check_against(&self.spec)?;
        let n = self.spec.n_sites;
        let dim = n - 1;
        let v = &self.eig.vectors;
        let t = tau / self.spec.omega1;

        // Project onto the eigenbasis and attach phases.
        let mut modes = vec![C64::new(0.0, 0.0); dim];
        for (p, mode) in modes.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..dim {
                acc += state.c[k + 1] * v[(k, p)];
            }
            *mode = acc * C64::from_polar(1.0, -self.eig.lambdas[p] * t);
        }

        let mut c = Vec::with_capacity(n + 1);
        c.push(state.c[0]);
        for k in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for (p, mode) in modes.iter().enumerate() {
                acc += *mode * v[(k, p)];
            }
            c.push(acc);
        }
        c.push(state.c[n]);
        Ok(DominoAmplitudes { c })
    }
}

/// Advances `state` by dimensionless time `tau = ω₁t` under the secular
/// Hamiltonian, exactly (spectral, no time stepping).
pub fn propagate(state: &DominoAmplitudes, tau: f64, spec: &ChainSpec) -> Result<DominoAmplitudes> {
    SubspacePropagator::new(spec).propagate(state, tau)
}

/// Per-site polarizations `p_1..p_N` and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Polarizations {
    pub sites: Vec<f64>,
    pub total: f64,
}

/// `⟨σ_mᶻ⟩` and `⟨P⟩` for a flipped-prefix superposition.
///
/// `Ψ_k` contributes `-1` to sites `m <= k` and `+1` beyond; its total
/// polarization is `N - 2k`.
pub fn observables(state: &DominoAmplitudes, spec: &ChainSpec) -> Result<Polarizations> {
    state.check_against(spec)?;
    Ok(observables_unchecked(state))
}

pub(crate) fn observables_unchecked(state: &DominoAmplitudes) -> Polarizations {
    let n = state.n_sites();
    let probs = state.probabilities();
    let total = probs
        .iter()
        .enumerate()
        .map(|(k, w)| w * (n as f64 - 2.0 * k as f64))
        .sum();
    // Weight of k < m minus weight of k >= m, built from the running prefix.
    let all: f64 = probs.iter().sum();
    let mut below = 0.0;
    let sites = (1..=n)
        .map(|m| {
            below += probs[m - 1];
            2.0 * below - all
        })
        .collect();
    Polarizations { sites, total }
}
