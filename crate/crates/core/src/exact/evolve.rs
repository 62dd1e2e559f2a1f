use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::operator::SpinOperator;
use super::DenseState;
use crate::error::{DominoError, Result};
use crate::C64;

/// Largest chain diagonalized densely under [`EvolutionMethod::Auto`].
pub const DENSE_LIMIT: usize = 10;

/// Per-step error target for the Krylov exponential.
pub const KRYLOV_TOLERANCE: f64 = 1e-12;

const KRYLOV_MAX_DIM: usize = 40;
const HERMITIAN_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvolutionMethod {
    /// Dense diagonalization up to 10 spins, Krylov above.
    #[default]
    Auto,
    Diagonalize,
    Krylov,
}

/// `exp(-iHt)` for a fixed Hermitian `H`, reusable across many times.
#[derive(Debug, Clone)]
pub enum DenseEvolver {
    Eigen {
        n_sites: usize,
        values: Vec<f64>,
        vectors: DMatrix<C64>,
    },
    Krylov(SpinOperator),
}

impl DenseEvolver {
    pub fn new(h: &SpinOperator) -> Result<Self> {
        Self::with_method(h, EvolutionMethod::Auto)
    }

    pub fn with_method(h: &SpinOperator, method: EvolutionMethod) -> Result<Self> {
        let defect = h.hermiticity_defect();
        if !h.is_hermitian() || defect > HERMITIAN_TOLERANCE {
            return Err(DominoError::NotHermitian { defect });
        }
        let dense = match method {
            EvolutionMethod::Auto => h.n_sites() <= DENSE_LIMIT,
            EvolutionMethod::Diagonalize => true,
            EvolutionMethod::Krylov => false,
        };
        if !dense {
            return Ok(Self::Krylov(h.clone()));
        }
        let (values, vectors) = if h.is_real() {
            let eig = SymmetricEigen::new(h.to_dense().map(|z| z.re));
            (
                eig.eigenvalues.iter().copied().collect(),
                eig.eigenvectors.map(|x| C64::new(x, 0.0)),
            )
        } else {
            let eig = SymmetricEigen::new(h.to_dense());
            (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
        };
        Ok(Self::Eigen {
            n_sites: h.n_sites(),
            values,
            vectors,
        })
    }

    fn n_sites(&self) -> usize {
        match self {
            Self::Eigen { n_sites, .. } => *n_sites,
            Self::Krylov(op) => op.n_sites(),
        }
    }

    /// `exp(-iHt) state`.
    pub fn evolve(&self, state: &DenseState, t: f64) -> Result<DenseState> {
        if state.n_sites() != self.n_sites() {
            return Err(DominoError::DimensionMismatch {
                expected: 1 << self.n_sites(),
                found: state.amplitudes().len(),
            });
        }
        let amps = match self {
            Self::Eigen {
                values, vectors, ..
            } => {
                let x = DVector::from_column_slice(state.amplitudes());
                let mut modes = vectors.ad_mul(&x);
                for (mode, e) in modes.iter_mut().zip(values) {
                    *mode *= C64::from_polar(1.0, -e * t);
                }
                (vectors * modes).iter().copied().collect()
            }
            Self::Krylov(op) => krylov_expm(op, state.amplitudes(), t),
        };
        Ok(DenseState::from_raw(state.n_sites(), amps))
    }
}

/// One-shot `exp(-iHt) state`.
pub fn evolve_dense(state: &DenseState, h: &SpinOperator, t: f64) -> Result<DenseState> {
    if state.n_sites() != h.n_sites() {
        return Err(DominoError::DimensionMismatch {
            expected: h.dim(),
            found: state.amplitudes().len(),
        });
    }
    DenseEvolver::new(h)?.evolve(state, t)
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Lanczos exponential with adaptive substeps.
///
/// Each substep builds an orthonormal Krylov basis (fully reorthogonalized),
/// exponentiates the projected tridiagonal matrix, and halves the step until
/// `β_m |[exp(-iT dt) e₁]_m|` is below [`KRYLOV_TOLERANCE`].
fn krylov_expm(op: &SpinOperator, x: &[C64], t: f64) -> Vec<C64> {
    let mut current = x.to_vec();
    let mut remaining = t;
    let mut step = t;
    while remaining.abs() > 0.0 {
        let attempt = if step.abs() > remaining.abs() {
            remaining
        } else {
            step
        };
        let (next, used) = krylov_step(op, &current, attempt);
        current = next;
        remaining -= used;
        step = 2.0 * used;
    }
    current
}

fn krylov_step(op: &SpinOperator, v: &[C64], dt: f64) -> (Vec<C64>, f64) {
    let beta0 = norm(v);
    if beta0 == 0.0 {
        return (v.to_vec(), dt);
    }
    let mut basis: Vec<Vec<C64>> = vec![v.iter().map(|z| z / beta0).collect()];
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut breakdown = false;
    for j in 0..KRYLOV_MAX_DIM.min(op.dim()) {
        let mut w = op.apply(&basis[j]);
        let alpha = dot(&basis[j], &w).re;
        for _ in 0..2 {
            for q in &basis {
                let proj = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= proj * qi;
                }
            }
        }
        alphas.push(alpha);
        let beta = norm(&w);
        if beta
            <= 1e-12
                * alpha
                    .abs()
                    .max(betas.last().copied().unwrap_or(0.0))
                    .max(1e-300)
        {
            breakdown = true;
            break;
        }
        betas.push(beta);
        basis.push(w.iter().map(|z| z / beta).collect());
    }
    let m = alphas.len();
    let tri = DMatrix::from_fn(m, m, |i, k| {
        if i == k {
            alphas[i]
        } else if i.abs_diff(k) == 1 {
            betas[i.min(k)]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(tri);
    let tail = if breakdown { 0.0 } else { betas[m - 1] };

    let mut dt = dt;
    let coeffs = loop {
        let y: Vec<C64> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|p| {
                        eig.eigenvectors[(i, p)]
                            * eig.eigenvectors[(0, p)]
                            * C64::from_polar(1.0, -eig.eigenvalues[p] * dt)
                    })
                    .sum()
            })
            .collect();
        if tail * y[m - 1].norm() <= KRYLOV_TOLERANCE {
            break y;
        }
        dt *= 0.5;
    };

    let dim = v.len();
    let mut out = vec![C64::new(0.0, 0.0); dim];
    for (c, q) in coeffs.iter().zip(&basis) {
        for (o, qi) in out.iter_mut().zip(q) {
            *o += beta0 * c * qi;
        }
    }
    (out, dt)
}

#[cfg(test)]
mod tests {
    use super::super::hamiltonians::{rotating_frame_hamiltonian, secular_hamiltonian};
    use super::super::prefix_index;
    use super::*;

    #[test]
    fn zero_time_identity() {
        let h = secular_hamiltonian(5, 1.0);
        let amps: Vec<C64> = (0..32)
            .map(|i| C64::new((i as f64).sin(), (i as f64).cos()))
            .collect();
        let n = norm(&amps);
        let state = DenseState::new(5, amps.iter().map(|z| z / n).collect()).unwrap();
        let out = evolve_dense(&state, &h, 0.0).unwrap();
        for (a, b) in out.amplitudes().iter().zip(state.amplitudes()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn all_up_is_stationary() {
        let h = secular_hamiltonian(6, 1.0);
        let up = DenseState::basis(6, 0).unwrap();
        let out = evolve_dense(&up, &h, 17.0).unwrap();
        assert!((out.fidelity(&up) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_spin_rabi() {
        let h = secular_hamiltonian(3, 1.0);
        let psi1 = DenseState::basis(3, prefix_index(1)).unwrap();
        for &t in &[0.5, 1.7, 4.0] {
            let out = evolve_dense(&psi1, &h, t).unwrap();
            let c1 = out.amplitudes()[prefix_index(1)];
            let c2 = out.amplitudes()[prefix_index(2)];
            assert!((c1 - C64::new((t / 2.0).cos(), 0.0)).norm() < 1e-12);
            assert!((c2 - C64::new(0.0, -(t / 2.0).sin())).norm() < 1e-12);
        }
    }

    #[test]
    fn krylov_agrees_with_diagonalization() {
        let h = rotating_frame_hamiltonian(7, 1.0, 4.0);
        let start = DenseState::basis(7, 1).unwrap();
        let dense = DenseEvolver::with_method(&h, EvolutionMethod::Diagonalize).unwrap();
        let krylov = DenseEvolver::with_method(&h, EvolutionMethod::Krylov).unwrap();
        for &t in &[0.3, 2.0, 9.0, -3.0] {
            let a = dense.evolve(&start, t).unwrap();
            let b = krylov.evolve(&start, t).unwrap();
            let dist = a
                .amplitudes()
                .iter()
                .zip(b.amplitudes())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(dist < 1e-10, "t = {t}: {dist}");
            assert!((b.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_hamiltonian_path() {
        let h = super::super::hamiltonians::interaction_picture_conjugated(4, 1.0, 2.0, 0.9);
        assert!(!h.is_real());
        let start = DenseState::basis(4, 3).unwrap();
        let dense = DenseEvolver::with_method(&h, EvolutionMethod::Diagonalize).unwrap();
        let krylov = DenseEvolver::with_method(&h, EvolutionMethod::Krylov).unwrap();
        let a = dense.evolve(&start, 2.5).unwrap();
        let b = krylov.evolve(&start, 2.5).unwrap();
        assert!((a.fidelity(&b) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian_and_mismatch() {
        let bad = SpinOperator::from_triplets(2, [(0, 1, C64::new(1.0, 0.0))], true);
        assert!(matches!(
            DenseEvolver::new(&bad),
            Err(DominoError::NotHermitian { .. })
        ));
        let unflagged = secular_hamiltonian(3, 1.0);
        let unflagged = unflagged.map_entries(false, |_, _, v| v);
        assert!(matches!(
            DenseEvolver::new(&unflagged),
            Err(DominoError::NotHermitian { .. })
        ));

        let h = secular_hamiltonian(4, 1.0);
        let wrong = DenseState::basis(3, 0).unwrap();
        assert!(matches!(
            evolve_dense(&wrong, &h, 1.0),
            Err(DominoError::DimensionMismatch { .. })
        ));
    }
}
