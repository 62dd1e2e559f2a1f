use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{DominoError, Result};
use crate::C64;

/// Single-site Pauli matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// `coeff · ⊗ σ` over the listed (zero-based) sites.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: C64,
    pub factors: Vec<(usize, Pauli)>,
}

impl PauliTerm {
    pub fn new(coeff: impl Into<C64>, factors: &[(usize, Pauli)]) -> Self {
        Self {
            coeff: coeff.into(),
            factors: factors.to_vec(),
        }
    }

    /// Image of computational basis state `col`: `(row, amplitude)`.
    ///
    /// Bit `i` set means site `i` is flipped (`σᶻ = -1`). Factors act
    /// right-to-left, so the rightmost factor is applied first.
    pub fn apply_basis(&self, col: usize) -> (usize, C64) {
        let mut state = col;
        let mut amp = self.coeff;
        for &(site, op) in self.factors.iter().rev() {
            let bit = (state >> site) & 1;
            match op {
                Pauli::X => state ^= 1 << site,
                Pauli::Z => {
                    if bit == 1 {
                        amp = -amp;
                    }
                }
                Pauli::Y => {
                    // Y|0⟩ = i|1⟩, Y|1⟩ = -i|0⟩
                    amp *= if bit == 0 {
                        C64::new(0.0, 1.0)
                    } else {
                        C64::new(0.0, -1.0)
                    };
                    state ^= 1 << site;
                }
            }
        }
        (state, amp)
    }
}

/// Sparse complex operator on `2^N` amplitudes, stored row-compressed.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperator {
    n_sites: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<C64>,
    hermitian: bool,
}

impl SpinOperator {
    /// Sums Pauli strings; entries that cancel to exactly zero are dropped.
    pub fn from_pauli_terms(n_sites: usize, terms: &[PauliTerm], hermitian: bool) -> Self {
        let dim = 1usize << n_sites;
        let mut triplets = Vec::with_capacity(terms.len() * dim);
        for term in terms {
            for col in 0..dim {
                let (row, amp) = term.apply_basis(col);
                triplets.push((row, col, amp));
            }
        }
        Self::from_triplets(n_sites, triplets, hermitian)
    }

    /// Accumulates duplicate `(row, col)` entries.
    pub fn from_triplets(
        n_sites: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
        hermitian: bool,
    ) -> Self {
        let dim = 1usize << n_sites;
        let mut rows: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            *rows[r].entry(c).or_insert(C64::new(0.0, 0.0)) += v;
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != C64::new(0.0, 0.0) {
                    cols.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            n_sites,
            row_ptr,
            cols,
            values,
            hermitian,
        }
    }

    /// Entry-wise map over stored values, keeping the sparsity pattern
    /// except for entries that become exactly zero.
    pub fn map_entries(&self, hermitian: bool, f: impl Fn(usize, usize, C64) -> C64) -> Self {
        let triplets = self.entries().map(|(r, c, v)| (r, c, f(r, c, v)));
        Self::from_triplets(self.n_sites, triplets.collect::<Vec<_>>(), hermitian)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// All stored `(row, col, value)` entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim()).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |i| (r, self.cols[i], self.values[i]))
        })
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[span.clone()].binary_search(&col) {
            Ok(i) => self.values[span.start + i],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        (0..self.dim())
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .map(|i| self.values[i] * x[self.cols[i]])
                    .sum()
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    /// True when every stored entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|r| self.get(r, r)).sum()
    }

    /// `max |H_rc - conj(H_cr)|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise distance to `other` (same order required).
    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(DominoError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let one = self.entries().map(|(r, c, v)| (v - other.get(r, c)).norm());
        let two = other.entries().map(|(r, c, v)| (v - self.get(r, c)).norm());
        Ok(one.chain(two).fold(0.0, f64::max))
    }

    /// `Σ wᵢ Hᵢ` over operators of the same order.
    pub fn linear_combination(parts: &[(f64, &SpinOperator)], hermitian: bool) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| DominoError::Unsupported("empty linear combination".into()))?;
        let n = first.1.n_sites;
        let mut triplets = Vec::new();
        for (w, op) in parts {
            if op.n_sites != n {
                return Err(DominoError::DimensionMismatch {
                    expected: 1 << n,
                    found: op.dim(),
                });
            }
            triplets.extend(op.entries().map(|(r, c, v)| (r, c, v * *w)));
        }
        Ok(Self::from_triplets(n, triplets, hermitian))
    }
}
