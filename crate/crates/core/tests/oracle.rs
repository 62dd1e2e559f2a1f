//! Cross-checks between the analytic engine and the full Hilbert-space
//! oracles.

use quantum_domino::chain::{self, SubspacePropagator};
use quantum_domino::closed_form::{closed_form_site, closed_form_total};
use quantum_domino::exact::{
    dense_observables, evolve_dense, prefix_index, DenseEvolver, DenseState, EvolutionMethod,
    ExactEngine,
};
use quantum_domino::{ChainSpec, DominoAmplitudes, C64};

fn spec(n: usize) -> ChainSpec {
    ChainSpec::new(n, 1.0).unwrap()
}

fn exact_psi1_observables(n: usize, tau: f64) -> quantum_domino::Polarizations {
    let s = spec(n);
    let engine = ExactEngine::default();
    let h = engine.build_secular_full(&s).unwrap();
    let start = engine.psi_basis_state(&s, 1).unwrap();
    dense_observables(&evolve_dense(&start, &h, tau).unwrap(), &s).unwrap()
}

#[test]
fn closed_forms_match_eight_spin_oracle() {
    let s = spec(8);
    let oracle = exact_psi1_observables(8, 5.0);
    assert!((closed_form_total(5.0, &s) - oracle.total).abs() < 1e-10);
    assert!((closed_form_site(4, 5.0, &s).unwrap() - oracle.sites[3]).abs() < 1e-10);
}

#[test]
fn secular_operator_restricts_to_tridiagonal_block() {
    for n in 3..=9 {
        let s = spec(n);
        let full = ExactEngine::default().build_secular_full(&s).unwrap();
        let block = chain::subspace_hamiltonian(&s);
        for k in 1..n {
            for l in 1..n {
                let entry = full.get(prefix_index(k), prefix_index(l));
                assert_eq!(entry.im, 0.0);
                assert_eq!(entry.re, block[(k - 1, l - 1)], "n = {n}, ({k}, {l})");
            }
        }
        let up = ExactEngine::default().psi_basis_state(&s, 0).unwrap();
        assert!(full
            .apply(up.amplitudes())
            .iter()
            .all(|z| *z == C64::new(0.0, 0.0)));
    }
}

#[test]
fn evolution_stays_in_prefix_subspace() {
    let s = spec(9);
    let engine = ExactEngine::default();
    let evolver = DenseEvolver::new(&engine.build_secular_full(&s).unwrap()).unwrap();
    let start = engine.psi_basis_state(&s, 1).unwrap();
    for i in 0..40 {
        let out = evolver.evolve(&start, 0.5 * i as f64).unwrap();
        assert!(out.prefix_leakage() < 1e-12);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn dense_amplitudes_match_subspace_amplitudes() {
    let s = spec(7);
    let engine = ExactEngine::default();
    let evolver = DenseEvolver::new(&engine.build_secular_full(&s).unwrap()).unwrap();
    let prop = SubspacePropagator::new(&s);
    let start =
        DominoAmplitudes::superposition(&s, C64::new(0.0, 0.6), C64::new(0.8, 0.0)).unwrap();
    for &tau in &[0.4, 3.0, 11.0] {
        let dense = evolver
            .evolve(&DenseState::from_domino(&start), tau)
            .unwrap();
        let sub = prop.propagate(&start, tau).unwrap();
        for (a, b) in dense.prefix_amplitudes().iter().zip(sub.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

#[test]
fn krylov_path_above_dense_limit() {
    // N = 11 goes through the Krylov exponential under the default method.
    let n = 11;
    let s = spec(n);
    let engine = ExactEngine::default();
    let h = engine.build_secular_full(&s).unwrap();
    let evolver = DenseEvolver::new(&h).unwrap();
    assert!(matches!(evolver, DenseEvolver::Krylov(_)));
    let start = engine.psi_basis_state(&s, 1).unwrap();
    let prop = SubspacePropagator::new(&s);
    let psi1 = DominoAmplitudes::basis(&s, 1).unwrap();
    for &tau in &[1.0, 6.5, 15.0] {
        let dense = dense_observables(&evolver.evolve(&start, tau).unwrap(), &s).unwrap();
        let sub = chain::observables(&prop.propagate(&psi1, tau).unwrap(), &s).unwrap();
        for (a, b) in dense.sites.iter().zip(&sub.sites) {
            assert!((a - b).abs() < 1e-10, "tau = {tau}");
        }
    }
}

#[test]
fn forced_krylov_matches_diagonalization_on_rotating_frame() {
    let s = spec(8).with_coupling(6.0).unwrap();
    let h = ExactEngine::default().build_rotframe(&s).unwrap();
    let dense = DenseEvolver::with_method(&h, EvolutionMethod::Diagonalize).unwrap();
    let krylov = DenseEvolver::with_method(&h, EvolutionMethod::Krylov).unwrap();
    let start = DenseState::basis(8, prefix_index(1)).unwrap();
    for &t in &[0.7, 4.0, 12.0] {
        let a = dense.evolve(&start, t).unwrap();
        let b = krylov.evolve(&start, t).unwrap();
        assert!((a.fidelity(&b) - 1.0).abs() < 1e-10);
    }
}

#[test]
fn secular_average_converges() {
    let engine = ExactEngine::default();
    let s4 = spec(4).with_coupling(1.0).unwrap();
    assert!(engine.secular_average_check(&s4, 256).unwrap() < 1e-8);

    let s5 = spec(5).with_coupling(2.0).unwrap();
    assert!(engine.secular_average_check(&s5, 512).unwrap() < 1e-8);

    // Simpson is exact on these trigonometric polynomials once the halved
    // grid resolves the cos Jt harmonic; 4 intervals alias it.
    let s3 = spec(3).with_coupling(1.0).unwrap();
    let coarse = engine.secular_average_check(&s3, 4).unwrap();
    let eight = engine.secular_average_check(&s3, 8).unwrap();
    let fine = engine.secular_average_check(&s3, 64).unwrap();
    assert!(coarse > 1e-3, "coarse = {coarse}");
    assert!(eight < coarse && fine < coarse);
    assert!(eight < 1e-14 && fine < 1e-14);
}

#[test]
fn three_spin_dense_rabi_in_absolute_time() {
    let s = ChainSpec::new(3, 2.0).unwrap();
    let engine = ExactEngine::default();
    let h = engine.build_secular_full(&s).unwrap();
    let start = engine.psi_basis_state(&s, 1).unwrap();
    let t = 0.8;
    let out = evolve_dense(&start, &h, t).unwrap();
    let w = s.omega1() * t / 2.0;
    assert!((out.amplitudes()[1] - C64::new(w.cos(), 0.0)).norm() < 1e-12);
    assert!((out.amplitudes()[3] - C64::new(0.0, -w.sin())).norm() < 1e-12);
}
