//! Randomized invariants across the linear-algebra, state, channel and
//! correlation layers.

use proptest::prelude::*;
use qcm_core::channels::{apply_pauli_channel, one_pauli, two_pauli, PauliChannelParams};
use qcm_core::cloners::{apply_local_cloner, MachinePreset};
use qcm_core::correlations::{concurrence_wootters, concurrence_x, discord_oracle, discord_x, eof};
use qcm_core::linalg::{
    fidelity_pure, partial_trace, partial_trace_matrix, tensor, von_neumann_entropy, DensityOperator,
};
use qcm_core::random::{random_density, random_local_unitary, random_pure, random_unitary, random_x_state, rng};
use qcm_core::states::{
    as_x_state, bloch_compose, bloch_decompose, pure_to_density, swap_operator, werner_to_density, PureSchmidtState,
    WernerState,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn partial_trace_order_independent(seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed), 8);
        let direct = partial_trace(&rho, &[2, 2, 2], &[2]).unwrap();
        let first_0 = partial_trace(&partial_trace(&rho, &[2, 2, 2], &[1, 2]).unwrap(), &[2, 2], &[1]).unwrap();
        let first_1 = partial_trace(&partial_trace(&rho, &[2, 2, 2], &[0, 2]).unwrap(), &[2, 2], &[1]).unwrap();
        prop_assert!(direct.matrix().max_abs_diff(first_0.matrix()) <= 1e-12);
        prop_assert!(direct.matrix().max_abs_diff(first_1.matrix()) <= 1e-12);
        // Keep-list order does not matter.
        let a = partial_trace_matrix(rho.matrix(), &[2, 2, 2], &[0, 2]).unwrap();
        let b = partial_trace_matrix(rho.matrix(), &[2, 2, 2], &[2, 0]).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-15);
    }

    #[test]
    fn tensor_associative_and_trace_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_unitary(&mut r, 2);
        let b = random_density(&mut r, 2).into_matrix();
        let c = random_unitary(&mut r, 3);
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
        let ab = tensor(&a, &c);
        prop_assert!((ab.trace() - a.trace() * c.trace()).norm() <= 1e-12);
    }

    #[test]
    fn entropy_unitarily_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, 4);
        let u = random_unitary(&mut r, 4);
        let moved = rho.conjugate_by(&u).unwrap();
        prop_assert!((von_neumann_entropy(&rho) - von_neumann_entropy(&moved)).abs() <= 1e-9);
    }

    #[test]
    fn pure_state_self_fidelity(seed in any::<u64>(), dim in 2usize..9) {
        let psi = random_pure(&mut rng(seed), dim);
        prop_assert!((fidelity_pure(&psi, &psi.projector()).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn schmidt_projectors_idempotent(alpha_sq in 0.0f64..=1.0) {
        let rho = pure_to_density(&PureSchmidtState::from_alpha_sq(alpha_sq).unwrap());
        let sq = rho.matrix() * rho.matrix();
        prop_assert!(sq.max_abs_diff(rho.matrix()) <= 1e-10);
    }

    #[test]
    fn werner_commutes_with_swap(x in -1.0f64..=1.0) {
        let rho = werner_to_density(&WernerState::new(x).unwrap());
        let f = swap_operator();
        let lhs = &f * rho.matrix();
        let rhs = rho.matrix() * &f;
        prop_assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
    }

    #[test]
    fn bloch_round_trip(seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed), 4);
        let b = bloch_decompose(&rho).unwrap();
        let back = bloch_decompose(&bloch_compose(&b).unwrap()).unwrap();
        prop_assert!(b.max_abs_diff(&back) <= 1e-12);
    }

    #[test]
    fn machines_preserve_x_shape(seed in any::<u64>()) {
        let x = random_x_state(&mut rng(seed));
        for preset in MachinePreset::ALL {
            let out = preset.machine().apply(&x.to_density()).unwrap();
            prop_assert!(as_x_state(&out).is_ok(), "{} broke the X shape", preset);
        }
    }

    #[test]
    fn one_pauli_identity_is_neutral(seed in any::<u64>(), s in 0.0f64..=1.0) {
        let rho = random_density(&mut rng(seed), 4);
        let once = apply_pauli_channel(&two_pauli(s).unwrap(), &rho).unwrap();
        let composed = apply_pauli_channel(&one_pauli(1.0).unwrap(), &once).unwrap();
        prop_assert!(once.matrix().max_abs_diff(composed.matrix()) <= 1e-15);
        prop_assert!((once.matrix().trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn pauli_channels_on_schmidt_inputs(alpha_sq in 0.0f64..=1.0, s in 0.0f64..=1.0) {
        let state = PureSchmidtState::from_alpha_sq(alpha_sq).unwrap();
        let (a2, b2, ab) = (alpha_sq, 1.0 - alpha_sq, state.alpha() * state.beta());
        let rho = pure_to_density(&state);

        let one = as_x_state(&apply_pauli_channel(&one_pauli(s).unwrap(), &rho).unwrap()).unwrap();
        let expect_one = [a2, 0.0, 0.0, b2, (4.0 * s - 1.0) / 3.0 * ab, 0.0];
        let got_one = [one.rho11, one.rho22, one.rho33, one.rho44, one.rho14, one.rho23];
        for (g, e) in got_one.iter().zip(expect_one) {
            prop_assert!((g - e).abs() <= 1e-12);
        }

        let two = as_x_state(&apply_pauli_channel(&two_pauli(s).unwrap(), &rho).unwrap()).unwrap();
        let expect_two = [
            (1.0 + 2.0 * a2 + (6.0 * a2 - 1.0) * s) / 8.0,
            (1.0 - s) / 4.0,
            (1.0 - s) / 4.0,
            (1.0 + 2.0 * b2 + (6.0 * b2 - 1.0) * s) / 8.0,
            s * ab,
            0.0,
        ];
        let got_two = [two.rho11, two.rho22, two.rho33, two.rho44, two.rho14, two.rho23];
        for (g, e) in got_two.iter().zip(expect_two) {
            prop_assert!((g - e).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn correlations_invariant_under_local_unitaries(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_x_state(&mut r);
        let u = random_local_unitary(&mut r);
        let moved = x.to_density().conjugate_by(&u).unwrap();
        let e_closed = eof(concurrence_x(&x));
        let e_moved = eof(concurrence_wootters(&moved).unwrap());
        prop_assert!((e_closed - e_moved).abs() <= 1e-6);
        let d_moved = discord_oracle(&moved).unwrap();
        prop_assert!((discord_x(&x).0 - d_moved).abs() <= 1e-6);
    }
}

#[test]
fn eof_monotone_in_concurrence() {
    let values: Vec<f64> = (0..=1000).map(|i| eof(i as f64 / 1000.0)).collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn local_cloner_outputs_physical_on_mixed_inputs() {
    let mut r = rng(5);
    for _ in 0..200 {
        let rho = random_density(&mut r, 4);
        for preset in MachinePreset::ALL {
            if let Some(m) = preset.coefficients() {
                let out = apply_local_cloner(&m, &rho).unwrap();
                assert!(DensityOperator::new(out.into_matrix()).is_ok());
            }
        }
    }
}

#[test]
fn pauli_weights_must_normalize() {
    assert!(PauliChannelParams::new(0.9, [0.0; 3], [0.0; 3], [[0.0; 3]; 3]).is_err());
    assert!(PauliChannelParams::new(0.25, [0.25, 0.0, 0.0], [0.25, 0.0, 0.0], [[0.25, 0.0, 0.0], [0.0; 3], [0.0; 3]])
        .is_ok());
}
