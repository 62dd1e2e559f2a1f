//! Symmetric tridiagonal Toeplitz matrices: constant diagonal `a`, constant
//! off-diagonal `b`.
//!
//! The characteristic polynomial obeys the three-term recursion
//!
//! ```text
//! D_n = (a - λ) D_{n-1} - b² D_{n-2},   D_0 = 1,  D_1 = a - λ
//! ```
//!
//! whose roots are `λ_p = a - 2b cos(pπ/(n+1))`, `p = 1..n`, with eigenvectors
//! `α_{p,k} = (-1)^{k-1} √(2/(n+1)) sin(pkπ/(n+1))`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{DominoError, Result};

/// Order and entries of a tridiagonal Toeplitz matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagSpec {
    dim: usize,
    a: f64,
    b: f64,
}

impl TridiagSpec {
    pub fn new(dim: usize, a: f64, b: f64) -> Result<Self> {
        if dim == 0 {
            return Err(DominoError::InvalidSpec(
                "tridiagonal order must be >= 1".into(),
            ));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(DominoError::InvalidSpec(format!(
                "tridiagonal entries must be finite (a = {a}, b = {b})"
            )));
        }
        Ok(Self { dim, a, b })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> f64 {
        self.a
    }

    pub fn off_diagonal(&self) -> f64 {
        self.b
    }

    /// Dense copy of the matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.a
            } else if i.abs_diff(j) == 1 {
                self.b
            } else {
                0.0
            }
        })
    }

    /// `M x` without materializing `M`.
    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        DVector::from_fn(n, |k, _| {
            let mut acc = self.a * x[k];
            if k > 0 {
                acc += self.b * x[k - 1];
            }
            if k + 1 < n {
                acc += self.b * x[k + 1];
            }
            acc
        })
    }
}

/// Orders above this use rescaled accumulation in the determinant recursion.
const RAW_RECURSION_LIMIT: usize = 500;
const RESCALE_HIGH: f64 = 1e150;
const RESCALE_LOW: f64 = 1e-150;

/// Determinant recursion carried with a separate natural-log scale.
///
/// `magnitude` is `(|a| + |λ| + 2|b|) |D_{n-1}| + b² |D_{n-2}|`, a bound on the
/// size of the terms combined in the last step (with `|a - λ|` replaced by the
/// scale of its operands). At a root they cancel, so `|D_n| / magnitude`
/// measures how close `λ` is to an eigenvalue independently of how large the
/// determinants have grown.
#[derive(Debug, Clone, Copy)]
pub struct ScaledDeterminant {
    /// `D_n` divided by `exp(log_scale)`.
    pub value: f64,
    /// Last-step term magnitude divided by `exp(log_scale)`.
    pub magnitude: f64,
    pub log_scale: f64,
}

impl ScaledDeterminant {
    pub fn determinant(&self) -> f64 {
        self.value * self.log_scale.exp()
    }

    /// `|D_n| / magnitude`: near zero at a root, one when no cancellation
    /// occurred.
    pub fn relative(&self) -> f64 {
        if self.magnitude == 0.0 {
            0.0
        } else {
            self.value.abs() / self.magnitude
        }
    }
}

/// Runs the recursion, dividing the carried pair by its running maximum
/// whenever it leaves `[1e-150, 1e150]`.
pub fn det_recursion_scaled(spec: &TridiagSpec, lambda: f64) -> ScaledDeterminant {
    let shift = spec.a - lambda;
    let b2 = spec.b * spec.b;
    let (mut d_prev, mut d_cur) = (1.0, shift);
    let scale = spec.a.abs() + lambda.abs() + 2.0 * spec.b.abs();
    let mut magnitude = scale;
    let mut log_scale = 0.0;
    for _ in 2..=spec.dim {
        let d_next = shift * d_cur - b2 * d_prev;
        magnitude = scale * d_cur.abs() + b2 * d_prev.abs();
        d_prev = d_cur;
        d_cur = d_next;
        let big = d_cur.abs().max(d_prev.abs());
        if big > RESCALE_HIGH || (big > 0.0 && big < RESCALE_LOW) {
            d_prev /= big;
            d_cur /= big;
            magnitude /= big;
            log_scale += big.ln();
        }
    }
    ScaledDeterminant {
        value: d_cur,
        magnitude,
        log_scale,
    }
}

/// `det(M - λI)` by the three-term recursion.
///
/// Raw accumulation up to order 500, rescaled above; the returned value can
/// still overflow to infinity for large orders when the determinant itself is
/// not representable.
pub fn det_recursion(spec: &TridiagSpec, lambda: f64) -> f64 {
    if spec.dim <= RAW_RECURSION_LIMIT {
        let shift = spec.a - lambda;
        let b2 = spec.b * spec.b;
        let (mut prev, mut cur) = (1.0, shift);
        for _ in 2..=spec.dim {
            let next = shift * cur - b2 * prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        det_recursion_scaled(spec, lambda).determinant()
    }
}

/// Closed-form eigenvalues and eigenvectors, indexed by `p = 1..dim`
/// (stored zero-based: column `p - 1` of `eigenvectors`).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Entry `(k - 1, p - 1)` is `α_{p,k}`.
    pub eigenvectors: DMatrix<f64>,
}

impl TridiagSpectrum {
    pub fn eigenvector(&self, p: usize) -> DVector<f64> {
        self.eigenvectors.column(p - 1).into_owned()
    }
}

/// `λ_p = a - 2b cos(pπ/(n+1))` and the alternating-sign sine eigenvectors.
///
/// With `b = 0` every `λ_p` collapses to `a` and the sine vectors remain an
/// orthonormal eigenbasis of `aI`.
pub fn analytic_spectrum(spec: &TridiagSpec) -> TridiagSpectrum {
    let n = spec.dim;
    let denom = (n + 1) as f64;
    let eigenvalues = (1..=n)
        .map(|p| spec.a - 2.0 * spec.b * (p as f64 * PI / denom).cos())
        .collect();
    let norm = (2.0 / denom).sqrt();
    let eigenvectors = DMatrix::from_fn(n, n, |row, col| {
        let (k, p) = (row + 1, col + 1);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sign * norm * ((p * k) as f64 * PI / denom).sin()
    });
    TridiagSpectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// `‖(M - λ_p I) α_p‖₂` for the analytic eigenpair `p` (1-based).
pub fn verify_eigenpair(spec: &TridiagSpec, p: usize) -> Result<f64> {
    if p == 0 || p > spec.dim {
        return Err(DominoError::OutOfRange {
            what: "eigenpair index p",
            value: p,
            min: 1,
            max: spec.dim,
        });
    }
    let denom = (spec.dim + 1) as f64;
    let lambda = spec.a - 2.0 * spec.b * (p as f64 * PI / denom).cos();
    let norm = (2.0 / denom).sqrt();
    let alpha = DVector::from_fn(spec.dim, |row, _| {
        let k = row + 1;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sign * norm * ((p * k) as f64 * PI / denom).sin()
    });
    let residual = spec.apply(&alpha) - alpha * lambda;
    Ok(residual.norm())
}
