use std::f64::consts::{FRAC_PI_2, TAU};

use proptest::prelude::*;
use quantum_domino::chain::{self, SubspacePropagator};
use quantum_domino::closed_form::ClosedForm;
use quantum_domino::tridiag::{self, TridiagSpec};
use quantum_domino::{ChainSpec, DominoAmplitudes, C64};

fn spec(n: usize) -> ChainSpec {
    ChainSpec::new(n, 1.0).unwrap()
}

fn superposition(n: usize, theta: f64, phase: f64) -> DominoAmplitudes {
    let a = C64::new(theta.cos(), 0.0);
    let b = C64::from_polar(theta.sin(), phase);
    DominoAmplitudes::superposition(&spec(n), a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_conserved(n in 3usize..40, tau in 0.0f64..200.0) {
        let s = spec(n);
        let out = chain::propagate(&DominoAmplitudes::basis(&s, 1).unwrap(), tau, &s).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_equals_spectral(n in 3usize..=12, tau in 0.0f64..60.0) {
        let s = spec(n);
        let cf = ClosedForm::new(&s);
        let obs = chain::observables(
            &chain::propagate(&DominoAmplitudes::basis(&s, 1).unwrap(), tau, &s).unwrap(),
            &s,
        ).unwrap();
        prop_assert!((cf.total(tau) - obs.total).abs() < 1e-10);
        for (m, want) in obs.sites.iter().enumerate() {
            prop_assert!((cf.site(m + 1, tau).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn ground_component_is_frozen(n in 3usize..30, theta in 0.0f64..FRAC_PI_2, phase in 0.0f64..TAU, tau in 0.0f64..100.0) {
        let start = superposition(n, theta, phase);
        let out = chain::propagate(&start, tau, &spec(n)).unwrap();
        prop_assert!((out.amplitude(0).norm() - start.amplitude(0).norm()).abs() < 1e-12);
        prop_assert_eq!(out.amplitude(n), C64::new(0.0, 0.0));
    }

    #[test]
    fn reversed_drive_undoes_evolution(n in 3usize..60, tau in 0.0f64..100.0, theta in 0.0f64..FRAC_PI_2) {
        let s = spec(n);
        let start = superposition(n, theta, 0.3);
        let there = chain::propagate(&start, tau, &s).unwrap();
        let back = chain::propagate(&there, tau, &s.reversed()).unwrap();
        prop_assert!(back.fidelity(&start) > 1.0 - 1e-10);
    }

    #[test]
    fn site_polarizations_sum_to_total(n in 3usize..40, tau in 0.0f64..80.0) {
        let s = spec(n);
        let prop = SubspacePropagator::new(&s);
        let obs = chain::observables(&prop.propagate(&DominoAmplitudes::basis(&s, 1).unwrap(), tau).unwrap(), &s).unwrap();
        prop_assert!((obs.sites.iter().sum::<f64>() - obs.total).abs() < 1e-12);
        prop_assert!(obs.total.abs() <= n as f64 + 1e-12);
    }

    #[test]
    fn tridiagonal_eigenpairs(dim in 1usize..80, a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let t = TridiagSpec::new(dim, a, b).unwrap();
        let spectrum = tridiag::analytic_spectrum(&t);
        prop_assert_eq!(spectrum.eigenvalues.len(), dim);
        for p in 1..=dim {
            prop_assert!(tridiag::verify_eigenpair(&t, p).unwrap() < 1e-10);
            prop_assert!(tridiag::det_recursion_scaled(&t, spectrum.eigenvalues[p - 1]).relative() < 1e-8);
        }
        let gram = spectrum.eigenvectors.transpose() * &spectrum.eigenvectors;
        let defect = (gram - nalgebra::DMatrix::<f64>::identity(dim, dim)).amax();
        prop_assert!(defect < 1e-12);
    }
}

#[test]
fn chain_eigensystem_is_the_tridiagonal_spectrum() {
    for n in 3..60 {
        let s = ChainSpec::new(n, 1.7).unwrap();
        let chain_eig = chain::eigen_system(&s);
        let t = TridiagSpec::new(n - 1, 0.0, 1.7 / 2.0).unwrap();
        let tri = tridiag::analytic_spectrum(&t);
        assert_eq!(chain_eig.lambdas.as_slice(), tri.eigenvalues.as_slice());
        assert_eq!(chain_eig.vectors, tri.eigenvectors);
    }
}
