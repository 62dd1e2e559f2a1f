//! Pauli-string Hamiltonians. Sites are zero-based here; spin `i` of the
//! chain is site `i - 1`.

use super::operator::{Pauli, PauliTerm, SpinOperator};
use crate::C64;

/// `(ω₁/2) Σᵢ σᵢˣ`.
pub fn transverse_field(n_sites: usize, omega1: f64) -> SpinOperator {
    let terms: Vec<_> = (0..n_sites)
        .map(|i| PauliTerm::new(0.5 * omega1, &[(i, Pauli::X)]))
        .collect();
    SpinOperator::from_pauli_terms(n_sites, &terms, true)
}

/// `(J/4) Σᵢ σᵢᶻ σᶻ_{i+1}`; diagonal.
pub fn ising_zz(n_sites: usize, j: f64) -> SpinOperator {
    let terms: Vec<_> = (0..n_sites.saturating_sub(1))
        .map(|i| PauliTerm::new(0.25 * j, &[(i, Pauli::Z), (i + 1, Pauli::Z)]))
        .collect();
    SpinOperator::from_pauli_terms(n_sites, &terms, true)
}

/// Transverse-field Ising chain in the frame rotating with the drive.
///
/// Accepts any `n_sites >= 1` and any real `omega1`, `j`, so degenerate
/// limits (pure Ising, free spins) can be built directly.
pub fn rotating_frame_hamiltonian(n_sites: usize, omega1: f64, j: f64) -> SpinOperator {
    let mut terms: Vec<_> = (0..n_sites)
        .map(|i| PauliTerm::new(0.5 * omega1, &[(i, Pauli::X)]))
        .collect();
    terms.extend(
        (0..n_sites.saturating_sub(1))
            .map(|i| PauliTerm::new(0.25 * j, &[(i, Pauli::Z), (i + 1, Pauli::Z)])),
    );
    SpinOperator::from_pauli_terms(n_sites, &terms, true)
}

/// Three-spin secular Hamiltonian: a spin flips only when its two neighbours
/// disagree.
pub fn secular_hamiltonian(n_sites: usize, omega1: f64) -> SpinOperator {
    let q = 0.25 * omega1;
    let mut terms = Vec::new();
    for i in 1..n_sites.saturating_sub(1) {
        terms.push(PauliTerm::new(q, &[(i, Pauli::X)]));
        terms.push(PauliTerm::new(
            -q,
            &[(i - 1, Pauli::Z), (i, Pauli::X), (i + 1, Pauli::Z)],
        ));
    }
    SpinOperator::from_pauli_terms(n_sites, &terms, true)
}

/// `exp(-i H_zz t) H_x exp(i H_zz t)` entrywise: `H_zz` is diagonal, so each
/// entry of `H_x` picks up `exp(-i (E_r - E_c) t)`.
pub fn interaction_picture_conjugated(n_sites: usize, omega1: f64, j: f64, t: f64) -> SpinOperator {
    let hzz = ising_zz(n_sites, j);
    let energies: Vec<f64> = (0..hzz.dim()).map(|r| hzz.get(r, r).re).collect();
    transverse_field(n_sites, omega1).map_entries(true, |r, c, v| {
        v * C64::from_polar(1.0, -(energies[r] - energies[c]) * t)
    })
}

/// The same operator from its trigonometric expansion: interior spins carry
/// `cos Jt`, `sin Jt` harmonics, the two end spins `cos(Jt/2)`, `sin(Jt/2)`.
pub fn interaction_picture_expanded(n_sites: usize, omega1: f64, j: f64, t: f64) -> SpinOperator {
    use Pauli::{X, Y, Z};
    let q = 0.25 * omega1;
    let (cos1, sin1) = ((j * t).cos(), (j * t).sin());
    let (cos_half, sin_half) = ((0.5 * j * t).cos(), (0.5 * j * t).sin());
    let mut terms = Vec::new();
    for i in 1..n_sites.saturating_sub(1) {
        let zxz = [(i - 1, Z), (i, X), (i + 1, Z)];
        terms.push(PauliTerm::new(q, &[(i, X)]));
        terms.push(PauliTerm::new(-q, &zxz));
        terms.push(PauliTerm::new(q * cos1, &[(i, X)]));
        terms.push(PauliTerm::new(q * cos1, &zxz));
        terms.push(PauliTerm::new(q * sin1, &[(i - 1, Z), (i, Y)]));
        terms.push(PauliTerm::new(q * sin1, &[(i, Y), (i + 1, Z)]));
    }
    if n_sites >= 2 {
        let h = 0.5 * omega1;
        let last = n_sites - 1;
        terms.push(PauliTerm::new(h * cos_half, &[(0, X)]));
        terms.push(PauliTerm::new(h * sin_half, &[(0, Y), (1, Z)]));
        terms.push(PauliTerm::new(h * cos_half, &[(last, X)]));
        terms.push(PauliTerm::new(h * sin_half, &[(last - 1, Z), (last, Y)]));
    }
    SpinOperator::from_pauli_terms(n_sites, &terms, true)
}
