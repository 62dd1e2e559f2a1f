//! Full Hilbert-space oracles.
//!
//! Everything here works on `2^N` amplitudes and exists to check the analytic
//! engine independently: the secular, rotating-frame and interaction-picture
//! Hamiltonians are assembled from Pauli strings, states are evolved by dense
//! diagonalization or a Krylov exponential, and the CNOT cascade realises the
//! ideal measurement amplifier.
//!
//! Bit convention: spin `i` (1-based) is bit `i - 1`; a set bit means the spin
//! is flipped (`σᶻ = -1`). `Ψ_k` is therefore the index with the low `k` bits
//! set.

mod evolve;
mod hamiltonians;
mod measurement;
mod operator;

pub use evolve::{evolve_dense, DenseEvolver, EvolutionMethod, KRYLOV_TOLERANCE};
pub use hamiltonians::{
    interaction_picture_conjugated, interaction_picture_expanded, ising_zz,
    rotating_frame_hamiltonian, secular_hamiltonian, transverse_field,
};
pub use measurement::{apply_cnot, dephase_outcomes, DephasedOutcomes};
pub use operator::{Pauli, PauliTerm, SpinOperator};

use crate::chain::{ChainSpec, DominoAmplitudes, Polarizations, NORM_TOLERANCE};
use crate::error::{DominoError, Result};
use crate::C64;

/// Default largest chain the exact engines accept.
pub const DEFAULT_CAP: usize = 14;

/// Full `2^N` wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n_sites: usize,
    amps: Vec<C64>,
}

impl DenseState {
    pub fn new(n_sites: usize, amps: Vec<C64>) -> Result<Self> {
        let expected = 1usize << n_sites;
        if amps.len() != expected {
            return Err(DominoError::DimensionMismatch {
                expected,
                found: amps.len(),
            });
        }
        let state = Self { n_sites, amps };
        let norm_sq = state.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(DominoError::NotNormalized { norm_sq });
        }
        Ok(state)
    }

    /// Computational basis state `index`.
    pub fn basis(n_sites: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_sites;
        if index >= dim {
            return Err(DominoError::OutOfRange {
                what: "basis index",
                value: index,
                min: 0,
                max: dim - 1,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_sites, amps })
    }

    /// Embeds a flipped-prefix superposition.
    pub fn from_domino(state: &DominoAmplitudes) -> Self {
        let n = state.n_sites();
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        for (k, c) in state.amplitudes().iter().enumerate() {
            amps[prefix_index(k)] = *c;
        }
        Self { n_sites: n, amps }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Amplitudes on `Ψ_0..=Ψ_N`.
    pub fn prefix_amplitudes(&self) -> Vec<C64> {
        (0..=self.n_sites)
            .map(|k| self.amps[prefix_index(k)])
            .collect()
    }

    /// Probability carried by basis states that are not flipped prefixes.
    pub fn prefix_leakage(&self) -> f64 {
        let mut prefix = vec![false; self.amps.len()];
        for k in 0..=self.n_sites {
            prefix[prefix_index(k)] = true;
        }
        self.amps
            .iter()
            .zip(prefix)
            .filter(|(_, on)| !on)
            .map(|(z, _)| z.norm_sqr())
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum::<C64>()
            .norm_sqr()
    }

    pub(crate) fn from_raw(n_sites: usize, amps: Vec<C64>) -> Self {
        Self { n_sites, amps }
    }
}

/// Basis index of `Ψ_k`: the low `k` bits set.
pub fn prefix_index(k: usize) -> usize {
    (1usize << k) - 1
}

/// `p_m = ⟨σ_mᶻ⟩` from bit-masked probability sums, and `P = Σ p_m`.
pub fn dense_observables(state: &DenseState, spec: &ChainSpec) -> Result<Polarizations> {
    if state.n_sites != spec.n_sites() {
        return Err(DominoError::DimensionMismatch {
            expected: 1 << spec.n_sites(),
            found: state.amps.len(),
        });
    }
    Ok(site_polarizations(state))
}

pub(crate) fn site_polarizations(state: &DenseState) -> Polarizations {
    let n = state.n_sites;
    let mut sites = vec![0.0; n];
    for (index, amp) in state.amps.iter().enumerate() {
        let w = amp.norm_sqr();
        if w == 0.0 {
            continue;
        }
        for (m, site) in sites.iter_mut().enumerate() {
            if (index >> m) & 1 == 1 {
                *site -= w;
            } else {
                *site += w;
            }
        }
    }
    let total = sites.iter().sum();
    Polarizations { sites, total }
}

/// Exact engines with a size guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactEngine {
    cap: usize,
}

impl Default for ExactEngine {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl ExactEngine {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check(&self, n_sites: usize) -> Result<()> {
        if n_sites > self.cap {
            return Err(DominoError::CapExceeded {
                n_sites,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// `Ψ_k` as a dense state.
    pub fn psi_basis_state(&self, spec: &ChainSpec, k: usize) -> Result<DenseState> {
        self.check(spec.n_sites())?;
        if k > spec.n_sites() {
            return Err(DominoError::OutOfRange {
                what: "basis index k",
                value: k,
                min: 0,
                max: spec.n_sites(),
            });
        }
        DenseState::basis(spec.n_sites(), prefix_index(k))
    }

    /// `(ω₁/4) Σ_{i=2}^{N-1} σᵢˣ (1 - σᶻ_{i-1} σᶻ_{i+1})`.
    pub fn build_secular_full(&self, spec: &ChainSpec) -> Result<SpinOperator> {
        self.check(spec.n_sites())?;
        Ok(secular_hamiltonian(spec.n_sites(), spec.signed_omega1()))
    }

    /// `(ω₁/2) Σ σᵢˣ + (J/4) Σ σᵢᶻ σᶻ_{i+1}`.
    pub fn build_rotframe(&self, spec: &ChainSpec) -> Result<SpinOperator> {
        self.check(spec.n_sites())?;
        let j = spec.require_coupling()?;
        Ok(rotating_frame_hamiltonian(
            spec.n_sites(),
            spec.signed_omega1(),
            j,
        ))
    }

    /// `exp(-i H_zz t) H_x exp(i H_zz t)` at absolute time `t`, by conjugation.
    pub fn interaction_picture_h(&self, spec: &ChainSpec, t: f64) -> Result<SpinOperator> {
        self.check(spec.n_sites())?;
        let j = spec.require_coupling()?;
        Ok(interaction_picture_conjugated(
            spec.n_sites(),
            spec.signed_omega1(),
            j,
            t,
        ))
    }

    /// Max-entry distance between the one-period average of the
    /// interaction-picture Hamiltonian and the secular Hamiltonian.
    ///
    /// Composite Simpson with `n_nodes` subintervals over `T = 4π/J`.
    pub fn secular_average_check(&self, spec: &ChainSpec, n_nodes: usize) -> Result<f64> {
        if n_nodes < 4 || n_nodes % 2 == 1 {
            return Err(DominoError::InvalidQuadrature(n_nodes));
        }
        self.check(spec.n_sites())?;
        let j = spec.require_coupling()?;
        let period = 4.0 * std::f64::consts::PI / j;
        let h = period / n_nodes as f64;
        let mut triplets = Vec::new();
        for node in 0..=n_nodes {
            let weight = if node == 0 || node == n_nodes {
                1.0
            } else if node % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let sample = self.interaction_picture_h(spec, node as f64 * h)?;
            let scale = weight * h / 3.0 / period;
            triplets.extend(sample.entries().map(|(r, c, v)| (r, c, v * scale)));
        }
        let average = SpinOperator::from_triplets(spec.n_sites(), triplets, true);
        average.max_distance(&self.build_secular_full(spec)?)
    }

    /// `CNOT_{N-1,N} ⋯ CNOT_{1,2}` applied to `(a|0⟩ + b|1⟩)₁ |0…0⟩`.
    pub fn cnot_cascade(&self, a: C64, b: C64, n_sites: usize) -> Result<DenseState> {
        self.check(n_sites)?;
        if n_sites < 2 {
            return Err(DominoError::InvalidSpec(
                "cascade needs at least 2 qubits".into(),
            ));
        }
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(DominoError::NotNormalized { norm_sq });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_sites];
        amps[0] = a;
        amps[1] = b;
        let mut state = DenseState::from_raw(n_sites, amps);
        for control in 1..n_sites {
            apply_cnot(&mut state, control, control + 1)?;
        }
        Ok(state)
    }
}
