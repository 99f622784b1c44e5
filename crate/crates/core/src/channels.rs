//! Two-qubit Pauli channels, `ρ ↦ Σ w_ij (σᵢ⊗σⱼ) ρ (σᵢ⊗σⱼ)`.

use crate::error::{Error, Result};
use crate::linalg::{fidelity_pure, pauli_pair, ComplexMatrix, DensityOperator, DEFAULT_TOLERANCE};
use crate::states::PureSchmidtState;

/// Weights of a two-qubit Pauli channel.
///
/// `identity` is the weight of `I⊗I`, `first[i]` of `σᵢ⊗I`, `second[i]` of
/// `I⊗σᵢ` and `joint[i][j]` of `σᵢ⊗σⱼ` (indices 0..3 stand for σ₁..σ₃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannelParams {
    identity: f64,
    first: [f64; 3],
    second: [f64; 3],
    joint: [[f64; 3]; 3],
}

impl PauliChannelParams {
    pub fn new(identity: f64, first: [f64; 3], second: [f64; 3], joint: [[f64; 3]; 3]) -> Result<Self> {
        let params = Self { identity, first, second, joint };
        let weights = params.weights();
        if let Some(w) = weights.iter().flatten().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::OutOfRange(format!("Pauli weights must be nonnegative, got {w}")));
        }
        let total: f64 = weights.iter().flatten().sum();
        if (total - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::OutOfRange(format!("Pauli weights sum to {total:.15}, expected 1")));
        }
        Ok(params)
    }

    /// The identity channel.
    pub fn identity() -> Self {
        Self { identity: 1.0, first: [0.0; 3], second: [0.0; 3], joint: [[0.0; 3]; 3] }
    }

    /// All sixteen Pauli products with weight 1/16: maps every state to I/4.
    pub fn completely_depolarizing() -> Self {
        let w = 1.0 / 16.0;
        Self { identity: w, first: [w; 3], second: [w; 3], joint: [[w; 3]; 3] }
    }

    pub fn identity_weight(&self) -> f64 {
        self.identity
    }

    /// `weights()[i][j]` is the weight of `σᵢ⊗σⱼ`, with index 0 the identity.
    pub fn weights(&self) -> [[f64; 4]; 4] {
        let mut w = [[0.0; 4]; 4];
        w[0][0] = self.identity;
        for i in 0..3 {
            w[i + 1][0] = self.first[i];
            w[0][i + 1] = self.second[i];
            for j in 0..3 {
                w[i + 1][j + 1] = self.joint[i][j];
            }
        }
        w
    }
}

fn require_unit_interval(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("channel parameter s must lie in [0, 1], got {s}")));
    }
    Ok(())
}

/// Dephasing on σ₃: `p₃ = q₃ = t₃₃ = (1 − s)/3`.
pub fn one_pauli(s: f64) -> Result<PauliChannelParams> {
    require_unit_interval(s)?;
    let w = (1.0 - s) / 3.0;
    let mut joint = [[0.0; 3]; 3];
    joint[2][2] = w;
    PauliChannelParams::new(s, [0.0, 0.0, w], [0.0, 0.0, w], joint)
}

/// Equal weight `(1 − s)/8` on the eight products built from σ₁ and σ₃.
pub fn two_pauli(s: f64) -> Result<PauliChannelParams> {
    require_unit_interval(s)?;
    let w = (1.0 - s) / 8.0;
    let mut joint = [[0.0; 3]; 3];
    for i in [0, 2] {
        for j in [0, 2] {
            joint[i][j] = w;
        }
    }
    PauliChannelParams::new(s, [w, 0.0, w], [w, 0.0, w], joint)
}

pub fn apply_pauli_channel(params: &PauliChannelParams, rho_in: &DensityOperator) -> Result<DensityOperator> {
    if rho_in.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "Pauli channel acts on two qubits, got dimension {}",
            rho_in.dim()
        )));
    }
    let weights = params.weights();
    let mut out = ComplexMatrix::zeros(4, 4);
    for (i, row) in weights.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let p = pauli_pair(i, j);
            out = &out + &(&(&p * rho_in.matrix()) * &p).scale(w);
        }
    }
    Ok(DensityOperator::from_matrix_unchecked(out))
}

/// `⟨ψ|Λ(|ψ⟩⟨ψ|)|ψ⟩` for a Schmidt-form input.
pub fn channel_fidelity(params: &PauliChannelParams, state: &PureSchmidtState) -> Result<f64> {
    let psi = state.vector();
    let out = apply_pauli_channel(params, &psi.projector())?;
    fidelity_pure(&psi, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{as_x_state, pure_to_density};

    fn schmidt(alpha_sq: f64) -> PureSchmidtState {
        PureSchmidtState::from_alpha_sq(alpha_sq).unwrap()
    }

    #[test]
    fn identity_and_full_depolarization() {
        let rho = pure_to_density(&schmidt(0.3));
        let same = apply_pauli_channel(&one_pauli(1.0).unwrap(), &rho).unwrap();
        assert!(same.matrix().approx_eq(rho.matrix(), 1e-15));
        let mixed = apply_pauli_channel(&PauliChannelParams::completely_depolarizing(), &rho).unwrap();
        assert!(mixed.matrix().approx_eq(&ComplexMatrix::identity(4).scale(0.25), 1e-15));
        assert_eq!(two_pauli(1.0).unwrap(), PauliChannelParams::identity());
    }

    #[test]
    fn one_pauli_scales_coherence() {
        for s in [0.0, 0.25, 0.6] {
            let state = schmidt(0.4);
            let out = apply_pauli_channel(&one_pauli(s).unwrap(), &pure_to_density(&state)).unwrap();
            let x = as_x_state(&out).unwrap();
            let expected = (4.0 * s - 1.0) / 3.0 * state.alpha() * state.beta();
            assert!((x.rho14 - expected).abs() < 1e-15);
            assert!((x.rho11 - 0.4).abs() < 1e-15 && (x.rho44 - 0.6).abs() < 1e-15);
        }
    }

    #[test]
    fn two_pauli_entries() {
        let out = apply_pauli_channel(&two_pauli(0.0).unwrap(), &pure_to_density(&schmidt(0.5))).unwrap();
        let x = as_x_state(&out).unwrap();
        assert!((x.rho22 - 0.25).abs() < 1e-15 && (x.rho33 - 0.25).abs() < 1e-15);
        for s in [0.0, 0.3, 1.0] {
            let out = apply_pauli_channel(&two_pauli(s).unwrap(), &pure_to_density(&schmidt(1.0))).unwrap();
            assert!((out.matrix()[(0, 0)].re - (3.0 + 5.0 * s) / 8.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fidelity_closed_forms() {
        for s in [0.0, 0.4, 1.0] {
            let f = channel_fidelity(&one_pauli(s).unwrap(), &schmidt(0.0)).unwrap();
            assert!((f - 1.0).abs() < 1e-15);
        }
        let f = channel_fidelity(&one_pauli(0.25).unwrap(), &schmidt(0.5)).unwrap();
        assert!((f - 0.5).abs() < 1e-15);

        let s = 0.4417;
        let f = channel_fidelity(&two_pauli(s).unwrap(), &schmidt(0.0)).unwrap();
        assert!((f - (3.0 + 5.0 * s) / 8.0).abs() < 1e-15);
        assert!((f - 0.651_062_5).abs() < 1e-12);
    }

    #[test]
    fn parameter_validation() {
        assert!(one_pauli(1.2).is_err());
        assert!(two_pauli(-0.1).is_err());
        assert!(PauliChannelParams::new(0.5, [0.1; 3], [0.0; 3], [[0.0; 3]; 3]).is_err());
        assert!(PauliChannelParams::new(1.2, [-0.2, 0.0, 0.0], [0.0; 3], [[0.0; 3]; 3]).is_err());
    }
}
