//! Explicit trigonometric sums for the polarizations of the `Ψ_1`-seeded wave.
//!
//! With `s_{pk} = sin(pkπ/N)` and `c_p = cos(pπ/N)`, the occupation of `Ψ_k`
//! at dimensionless time `τ` is
//!
//! ```text
//! w_k(τ) = (4/N²) Σ_{p,r=1}^{N-1} s_{pk} s_{p1} s_{rk} s_{r1} cos((c_p - c_r) τ)
//! ```
//!
//! The oscillation frequency is the eigenvalue difference `λ_r - λ_p`, so the
//! cosine argument pairs `p` with `r`. The total polarization is
//! `Σ_k (N - 2k) w_k` and site `m` sees `Σ_{k<m} w_k - Σ_{k>=m} w_k`.
//!
//! The sums are evaluated literally (`O(N³)` per time point); use
//! [`crate::chain::SubspacePropagator`] for long chains or dense grids.

use std::f64::consts::PI;

use crate::chain::ChainSpec;
use crate::error::{DominoError, Result};

/// Precomputed sine products for one chain length.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    n_sites: usize,
    /// `amp[(k-1)*(N-1) + (p-1)] = sin(pkπ/N) sin(pπ/N)`.
    amp: Vec<f64>,
    cosines: Vec<f64>,
}

impl ClosedForm {
    pub fn new(spec: &ChainSpec) -> Self {
        let n = spec.n_sites();
        let dim = n - 1;
        let nf = n as f64;
        let mut amp = Vec::with_capacity(dim * dim);
        for k in 1..n {
            for p in 1..n {
                amp.push(((p * k) as f64 * PI / nf).sin() * (p as f64 * PI / nf).sin());
            }
        }
        let cosines = (1..n).map(|p| (p as f64 * PI / nf).cos()).collect();
        Self {
            n_sites: n,
            amp,
            cosines,
        }
    }

    /// Occupations `w_1..w_{N-1}` at time `tau`.
    pub fn weights(&self, tau: f64) -> Vec<f64> {
        let dim = self.n_sites - 1;
        let mut phase = vec![0.0; dim * dim];
        for p in 0..dim {
            for r in 0..dim {
                phase[p * dim + r] = ((self.cosines[p] - self.cosines[r]) * tau).cos();
            }
        }
        let prefactor = 4.0 / (self.n_sites * self.n_sites) as f64;
        (0..dim)
            .map(|k| {
                let row = &self.amp[k * dim..(k + 1) * dim];
                let mut acc = 0.0;
                for p in 0..dim {
                    let mut inner = 0.0;
                    for r in 0..dim {
                        inner += row[r] * phase[p * dim + r];
                    }
                    acc += row[p] * inner;
                }
                prefactor * acc
            })
            .collect()
    }

    pub fn total(&self, tau: f64) -> f64 {
        let n = self.n_sites as f64;
        self.weights(tau)
            .iter()
            .enumerate()
            .map(|(i, w)| (n - 2.0 * (i + 1) as f64) * w)
            .sum()
    }

    pub fn site(&self, m: usize, tau: f64) -> Result<f64> {
        check_site(self.n_sites, m)?;
        let w = self.weights(tau);
        Ok(site_from_weights(&w, m))
    }

    /// All `p_1..p_N` from one weight evaluation.
    pub fn sites(&self, tau: f64) -> Vec<f64> {
        let w = self.weights(tau);
        (1..=self.n_sites)
            .map(|m| site_from_weights(&w, m))
            .collect()
    }
}

fn site_from_weights(w: &[f64], m: usize) -> f64 {
    // w[i] is the occupation of Ψ_{i+1}.
    w.iter()
        .enumerate()
        .map(|(i, wk)| if i + 1 < m { *wk } else { -*wk })
        .sum()
}

fn check_site(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(DominoError::OutOfRange {
            what: "site index m",
            value: m,
            min: 1,
            max: n,
        });
    }
    Ok(())
}

/// `⟨P(τ)⟩` for the chain started in `Ψ_1`.
pub fn closed_form_total(tau: f64, spec: &ChainSpec) -> f64 {
    ClosedForm::new(spec).total(tau)
}

/// `p_m(τ)` for the chain started in `Ψ_1`, `m = 1..=N`.
pub fn closed_form_site(m: usize, tau: f64, spec: &ChainSpec) -> Result<f64> {
    check_site(spec.n_sites(), m)?;
    ClosedForm::new(spec).site(m, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec(n: usize) -> ChainSpec {
        ChainSpec::new(n, 1.0).unwrap()
    }

    #[test]
    fn initial_values() {
        for n in [3, 5, 8, 20] {
            let s = spec(n);
            assert_abs_diff_eq!(closed_form_total(0.0, &s), n as f64 - 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(closed_form_site(1, 0.0, &s).unwrap(), -1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(closed_form_site(n, 0.0, &s).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_level_reduction() {
        let s = spec(3);
        for i in 0..30 {
            let tau = 0.37 * i as f64;
            assert_abs_diff_eq!(closed_form_total(tau, &s), tau.cos(), epsilon = 1e-13);
        }
    }

    #[test]
    fn sites_sum_to_total() {
        let s = spec(9);
        let cf = ClosedForm::new(&s);
        for &tau in &[0.0, 1.3, 4.4, 11.0] {
            let sum: f64 = cf.sites(tau).iter().sum();
            assert_abs_diff_eq!(sum, cf.total(tau), epsilon = 1e-10);
        }
    }

    #[test]
    fn weights_stay_normalized() {
        let cf = ClosedForm::new(&spec(12));
        for &tau in &[0.0, 2.0, 9.5, 40.0] {
            assert_abs_diff_eq!(cf.weights(tau).iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn site_out_of_range() {
        let s = spec(4);
        assert!(closed_form_site(0, 1.0, &s).is_err());
        assert!(closed_form_site(5, 1.0, &s).is_err());
    }
}
