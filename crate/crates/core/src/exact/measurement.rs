use super::DenseState;
use crate::error::{DominoError, Result};

/// Flips spin `target` wherever spin `control` is flipped (1-based spins).
pub fn apply_cnot(state: &mut DenseState, control: usize, target: usize) -> Result<()> {
    let n = state.n_sites();
    for spin in [control, target] {
        if spin == 0 || spin > n {
            return Err(DominoError::OutOfRange {
                what: "qubit index",
                value: spin,
                min: 1,
                max: n,
            });
        }
    }
    if control == target {
        return Err(DominoError::InvalidSpec(
            "CNOT control equals target".into(),
        ));
    }
    let (cbit, tbit) = (1usize << (control - 1), 1usize << (target - 1));
    let mut amps = state.amplitudes().to_vec();
    for index in 0..amps.len() {
        // Swap each pair once, from the member with the target bit clear.
        if index & cbit != 0 && index & tbit == 0 {
            amps.swap(index, index | tbit);
        }
    }
    *state = DenseState::from_raw(n, amps);
    Ok(())
}

/// Outcome probabilities after full dephasing in the pointer basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasedOutcomes {
    /// Weight of `|0…0⟩` (device in its ground reading).
    pub all_up: f64,
    /// Weight of `|1…1⟩`.
    pub all_down: f64,
    /// Weight of every other basis state.
    pub residual: f64,
}

/// Projects onto the two ferromagnetic pointer states.
pub fn dephase_outcomes(state: &DenseState) -> DephasedOutcomes {
    let amps = state.amplitudes();
    let last = amps.len() - 1;
    let residual = amps[1..last].iter().map(|z| z.norm_sqr()).sum();
    DephasedOutcomes {
        all_up: amps[0].norm_sqr(),
        all_down: amps[last].norm_sqr(),
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::super::ExactEngine;
    use super::*;
    use crate::C64;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn cascade_basis_inputs() {
        let engine = ExactEngine::default();
        let zero = engine.cnot_cascade(c(1.0), c(0.0), 5).unwrap();
        assert_eq!(zero.amplitudes()[0], c(1.0));
        let one = engine.cnot_cascade(c(0.0), c(1.0), 5).unwrap();
        assert_eq!(one.amplitudes()[31], c(1.0));
        assert_eq!(
            dephase_outcomes(&zero),
            DephasedOutcomes {
                all_up: 1.0,
                all_down: 0.0,
                residual: 0.0
            }
        );
    }

    #[test]
    fn cascade_makes_cat_state() {
        let h = 0.5f64.sqrt();
        let cat = ExactEngine::default().cnot_cascade(c(h), c(h), 5).unwrap();
        assert_eq!(cat.amplitudes()[0], c(h));
        assert_eq!(cat.amplitudes()[31], c(h));
        let out = dephase_outcomes(&cat);
        assert!((out.all_up - 0.5).abs() < 1e-15 && (out.all_down - 0.5).abs() < 1e-15);
        assert_eq!(out.residual, 0.0);
    }

    #[test]
    fn cascade_weights() {
        let state = ExactEngine::default()
            .cnot_cascade(c(0.6), C64::new(0.0, 0.8), 6)
            .unwrap();
        let out = dephase_outcomes(&state);
        assert!((out.all_up - 0.36).abs() < 1e-15);
        assert!((out.all_down - 0.64).abs() < 1e-15);
        assert_eq!(out.residual, 0.0);
    }

    #[test]
    fn cascade_rejects_unnormalized() {
        assert!(matches!(
            ExactEngine::default().cnot_cascade(c(1.0), c(1.0), 4),
            Err(DominoError::NotNormalized { .. })
        ));
    }

    #[test]
    fn cnot_truth_table() {
        // Spin 1 is bit 0 (control), spin 2 is bit 1 (target).
        for (input, output) in [(0b00, 0b00), (0b01, 0b11), (0b10, 0b10), (0b11, 0b01)] {
            let mut s = DenseState::basis(2, input).unwrap();
            apply_cnot(&mut s, 1, 2).unwrap();
            assert_eq!(s.amplitudes()[output], c(1.0));
        }
        let mut s = DenseState::basis(2, 0).unwrap();
        assert!(apply_cnot(&mut s, 1, 3).is_err());
        assert!(apply_cnot(&mut s, 2, 2).is_err());
    }
}
