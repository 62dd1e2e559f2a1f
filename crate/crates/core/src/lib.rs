//! Stimulated polarization waves ("quantum domino") in a one-dimensional Ising
//! chain driven by a weak resonant transverse field.
//!
//! Starting from a chain with only its first spin flipped, the secular
//! three-spin Hamiltonian moves a wave of flipped spins down the chain. The
//! dynamics never leaves the span of the flipped-prefix states `Ψ_k` (first
//! `k` spins flipped), whose dynamical block is a symmetric tridiagonal
//! Toeplitz matrix with a closed-form spectrum.
//!
//! The crate is organised as
//!
//! * [`chain`]: the flipped-prefix subspace, its analytic eigensystem and
//!   spectral propagation;
//! * [`closed_form`]: the explicit trigonometric sums for total and per-site
//!   polarization;
//! * [`tridiag`]: the tridiagonal Toeplitz toolkit underneath the eigensystem;
//! * [`exact`]: full `2^N` Hilbert-space oracles (secular, rotating-frame,
//!   interaction-picture Hamiltonians, dense/Krylov evolution, CNOT cascade);
//! * [`metrics`]: polarization series, peak detection, amplification and
//!   contrast, wavefront and domain-wall width.
//!
//! Time is the dimensionless `τ = ω₁ t` everywhere, except in the exact
//! engine's [`exact::evolve_dense`], which takes absolute time.
//!
//! ```
//! use quantum_domino::{chain, ChainSpec, DominoAmplitudes};
//!
//! let spec = ChainSpec::new(8, 1.0).unwrap();
//! let start = DominoAmplitudes::basis(&spec, 1).unwrap();
//! let later = chain::propagate(&start, 5.0, &spec).unwrap();
//! let obs = chain::observables(&later, &spec).unwrap();
//! assert!(obs.total < 6.0);
//! ```

pub mod chain;
pub mod closed_form;
pub mod error;
pub mod exact;
pub mod metrics;
pub mod tridiag;

pub use chain::{ChainSpec, DominoAmplitudes, DrivePhase, Polarizations, SubspaceEigenSystem};
pub use error::{DominoError, Result};

/// Complex amplitude type used by every engine.
pub type C64 = num_complex::Complex64;

// The guide's code listings are compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/subspace.md")]
    mod subspace {}
    #[doc = include_str!("../../../book/src/tridiagonal.md")]
    mod tridiagonal {}
    #[doc = include_str!("../../../book/src/observables.md")]
    mod observables {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
}
