//! Input-state families and two-qubit representations: Schmidt-form pure
//! states, Werner states, the Bloch (Pauli-expectation) form and X-states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    pauli, pauli_pair, ComplexMatrix, DensityOperator, PureState, DEFAULT_TOLERANCE, DENSITY_TOLERANCE,
};

/// `α|00⟩ + β|11⟩` with real, nonnegative `α`, `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureSchmidtState {
    alpha: f64,
    beta: f64,
}

impl PureSchmidtState {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
            return Err(Error::OutOfRange(format!("Schmidt coefficients must lie in [0, 1], got ({alpha}, {beta})")));
        }
        let deviation = (alpha * alpha + beta * beta - 1.0).abs();
        if deviation > DEFAULT_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { alpha, beta })
    }

    /// `β = +√(1 − α²)`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::OutOfRange(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        Ok(Self { alpha, beta: (1.0 - alpha * alpha).max(0.0).sqrt() })
    }

    /// Parameterization by `α² ∈ [0, 1]`, the variable the sweeps use.
    pub fn from_alpha_sq(alpha_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::OutOfRange(format!("alpha^2 must lie in [0, 1], got {alpha_sq}")));
        }
        Ok(Self { alpha: alpha_sq.sqrt(), beta: (1.0 - alpha_sq).sqrt() })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha * self.alpha
    }

    pub fn vector(&self) -> PureState {
        let z = Complex64::new(0.0, 0.0);
        PureState::from_amplitudes_unchecked(vec![
            Complex64::new(self.alpha, 0.0),
            z,
            z,
            Complex64::new(self.beta, 0.0),
        ])
    }
}

/// Rank-one projector onto `α|00⟩ + β|11⟩`.
pub fn pure_to_density(s: &PureSchmidtState) -> DensityOperator {
    s.vector().projector()
}

/// Werner state with mixing parameter `x ∈ [−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerState {
    x: f64,
}

impl WernerState {
    pub fn new(x: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange(format!("Werner parameter must lie in [-1, 1], got {x}")));
        }
        Ok(Self { x })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// The common diagonal correlation `t₁ = t₂ = t₃ = (2x − 1)/3`.
    pub fn correlation(&self) -> f64 {
        (2.0 * self.x - 1.0) / 3.0
    }
}

/// The two-qubit swap operator `Σ_{k,l} |kl⟩⟨lk|`.
pub fn swap_operator() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    )
    .expect("4x4 literal")
}

/// `((2 − x)/6)·I + ((2x − 1)/6)·SWAP`.
pub fn werner_to_density(w: &WernerState) -> DensityOperator {
    let x = w.x;
    let m = &ComplexMatrix::identity(4).scale((2.0 - x) / 6.0) + &swap_operator().scale((2.0 * x - 1.0) / 6.0);
    DensityOperator::from_matrix_unchecked(m)
}

/// Local Bloch vectors and correlation matrix of a two-qubit state:
/// `ρ = ¼(I⊗I + Σ aᵢ σᵢ⊗I + Σ bᵢ I⊗σᵢ + Σ t_ij σᵢ⊗σⱼ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochForm {
    pub local_a: [f64; 3],
    pub local_b: [f64; 3],
    pub correlation: [[f64; 3]; 3],
}

impl BlochForm {
    /// Zero local vectors and the given diagonal correlation matrix.
    pub fn bell_diagonal(t: [f64; 3]) -> Self {
        let mut correlation = [[0.0; 3]; 3];
        for (k, &tk) in t.iter().enumerate() {
            correlation[k][k] = tk;
        }
        Self { local_a: [0.0; 3], local_b: [0.0; 3], correlation }
    }

    /// Largest absolute difference over all 15 components.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            worst = worst.max((self.local_a[i] - other.local_a[i]).abs());
            worst = worst.max((self.local_b[i] - other.local_b[i]).abs());
            for j in 0..3 {
                worst = worst.max((self.correlation[i][j] - other.correlation[i][j]).abs());
            }
        }
        worst
    }
}

fn require_two_qubit(rho: &DensityOperator) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected a two-qubit (4-dim) state, got dimension {}",
            rho.dim()
        )));
    }
    Ok(())
}

fn expectation(rho: &ComplexMatrix, op: &ComplexMatrix) -> f64 {
    // Tr(ρ·op) without forming the product.
    let n = rho.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += rho[(i, k)] * op[(k, i)];
        }
    }
    acc.re
}

/// Pauli traces `aᵢ = Tr ρ(σᵢ⊗I)`, `bᵢ = Tr ρ(I⊗σᵢ)`, `t_ij = Tr ρ(σᵢ⊗σⱼ)`.
pub fn bloch_decompose(rho: &DensityOperator) -> Result<BlochForm> {
    require_two_qubit(rho)?;
    let m = rho.matrix();
    let mut form = BlochForm::default();
    for i in 0..3 {
        form.local_a[i] = expectation(m, &pauli_pair(i + 1, 0));
        form.local_b[i] = expectation(m, &pauli_pair(0, i + 1));
        for j in 0..3 {
            form.correlation[i][j] = expectation(m, &pauli_pair(i + 1, j + 1));
        }
    }
    Ok(form)
}

/// Assembles the Bloch form into a matrix without checking positivity.
pub fn bloch_to_matrix(b: &BlochForm) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4);
    for i in 0..3 {
        m = &m + &pauli_pair(i + 1, 0).scale(b.local_a[i]);
        m = &m + &pauli_pair(0, i + 1).scale(b.local_b[i]);
        for j in 0..3 {
            m = &m + &pauli_pair(i + 1, j + 1).scale(b.correlation[i][j]);
        }
    }
    m.scale(0.25)
}

/// Inverse of [`bloch_decompose`]; fails with [`Error::UnphysicalBloch`] when
/// the assembled matrix has an eigenvalue below `−1e-10`.
pub fn bloch_compose(b: &BlochForm) -> Result<DensityOperator> {
    let m = bloch_to_matrix(b);
    let values = crate::linalg::eigvals_hermitian(&m)?;
    let min = values.last().copied().unwrap_or(0.0);
    if min < -DENSITY_TOLERANCE {
        return Err(Error::UnphysicalBloch { min_eigenvalue: min });
    }
    Ok(DensityOperator::from_matrix_unchecked(m))
}

/// A two-qubit state with nonzero entries only on the diagonal and
/// anti-diagonal, with real coherences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    /// Coherence between |00⟩ and |11⟩.
    pub rho14: f64,
    /// Coherence between |01⟩ and |10⟩.
    pub rho23: f64,
}

impl XState {
    pub fn new(rho11: f64, rho22: f64, rho33: f64, rho44: f64, rho14: f64, rho23: f64) -> Result<Self> {
        let x = Self { rho11, rho22, rho33, rho44, rho14, rho23 };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<()> {
        let diag = [self.rho11, self.rho22, self.rho33, self.rho44];
        if diag.iter().chain([self.rho14, self.rho23].iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidDensity("non-finite X-state entry".into()));
        }
        if let Some(p) = diag.iter().find(|&&p| p < -DENSITY_TOLERANCE) {
            return Err(Error::InvalidDensity(format!("negative population {p:.3e}")));
        }
        let sum: f64 = diag.iter().sum();
        if (sum - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("populations sum to {sum:.12}")));
        }
        if self.rho14 * self.rho14 > self.rho11 * self.rho44 + DEFAULT_TOLERANCE {
            return Err(Error::InvalidDensity(format!("outer coherence {:.3e} exceeds sqrt(rho11 rho44)", self.rho14)));
        }
        if self.rho23 * self.rho23 > self.rho22 * self.rho33 + DEFAULT_TOLERANCE {
            return Err(Error::InvalidDensity(format!("inner coherence {:.3e} exceeds sqrt(rho22 rho33)", self.rho23)));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_real(
            4,
            4,
            &[
                self.rho11, 0.0, 0.0, self.rho14, //
                0.0, self.rho22, self.rho23, 0.0, //
                0.0, self.rho23, self.rho33, 0.0, //
                self.rho14, 0.0, 0.0, self.rho44,
            ],
        )
        .expect("4x4 literal")
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator::from_matrix_unchecked(self.to_matrix())
    }

    /// Largest absolute difference over the six entries.
    pub fn max_abs_diff(&self, other: &XState) -> f64 {
        [
            self.rho11 - other.rho11,
            self.rho22 - other.rho22,
            self.rho33 - other.rho33,
            self.rho44 - other.rho44,
            self.rho14 - other.rho14,
            self.rho23 - other.rho23,
        ]
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
    }

    /// The state with qubits exchanged (|01⟩ ↔ |10⟩).
    pub fn swapped(&self) -> XState {
        XState { rho22: self.rho33, rho33: self.rho22, ..*self }
    }
}

/// Extracts the X-state entries, rejecting matrices with entries off the X
/// pattern (or complex coherences) larger than `1e-10`.
pub fn as_x_state(rho: &DensityOperator) -> Result<XState> {
    require_two_qubit(rho)?;
    let m = rho.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let on_x = i == j || i + j == 3;
            let z = m[(i, j)];
            if !on_x && z.norm() > DENSITY_TOLERANCE {
                return Err(Error::NotXShaped { row: i + 1, col: j + 1, value: z.norm() });
            }
            if on_x && z.im.abs() > DENSITY_TOLERANCE {
                return Err(Error::NotXShaped { row: i + 1, col: j + 1, value: z.im });
            }
        }
    }
    XState::new(
        m[(0, 0)].re,
        m[(1, 1)].re,
        m[(2, 2)].re,
        m[(3, 3)].re,
        0.5 * (m[(0, 3)].re + m[(3, 0)].re),
        0.5 * (m[(1, 2)].re + m[(2, 1)].re),
    )
}

/// Single-qubit Bloch vector `(Tr ρσ₁, Tr ρσ₂, Tr ρσ₃)`.
pub fn qubit_bloch_vector(rho: &DensityOperator) -> Result<[f64; 3]> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a qubit state, got dimension {}", rho.dim())));
    }
    Ok([1, 2, 3].map(|k| expectation(rho.matrix(), &pauli(k))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schmidt_endpoints_and_bell() {
        let product = pure_to_density(&PureSchmidtState::from_alpha(1.0).unwrap());
        assert!(product.matrix().approx_eq(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]), 1e-15));

        let bell = pure_to_density(&PureSchmidtState::from_alpha_sq(0.5).unwrap());
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((bell.matrix()[(i, j)].re - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn schmidt_generic_entries() {
        let rho = pure_to_density(&PureSchmidtState::from_alpha_sq(0.3).unwrap());
        let m = rho.matrix();
        assert!((m[(0, 0)].re - 0.3).abs() < 1e-15);
        assert!((m[(3, 3)].re - 0.7).abs() < 1e-15);
        assert!((m[(0, 3)].re - 0.21f64.sqrt()).abs() < 1e-15);
        assert!((m[(0, 3)].re - 0.458_257_569_5).abs() < 1e-10);
    }

    #[test]
    fn schmidt_rejects_bad_coefficients() {
        assert!(PureSchmidtState::new(0.6, 0.6).is_err());
        assert!(PureSchmidtState::from_alpha_sq(1.2).is_err());
        assert!(PureSchmidtState::new(0.6, 0.8).is_ok());
    }

    #[test]
    fn werner_special_points() {
        let mixed = werner_to_density(&WernerState::new(0.5).unwrap());
        assert!(mixed.matrix().approx_eq(&ComplexMatrix::identity(4).scale(0.25), 1e-15));

        let sym = werner_to_density(&WernerState::new(1.0).unwrap());
        let expected = (&ComplexMatrix::identity(4) + &swap_operator()).scale(1.0 / 6.0);
        assert!(sym.matrix().approx_eq(&expected, 1e-15));

        let singlet = werner_to_density(&WernerState::new(-1.0).unwrap());
        let form = bloch_decompose(&singlet).unwrap();
        assert!(form.max_abs_diff(&BlochForm::bell_diagonal([-1.0, -1.0, -1.0])) < 1e-14);
        assert!(DensityOperator::new(singlet.into_matrix()).is_ok());

        assert!(WernerState::new(1.5).is_err());
    }

    #[test]
    fn bloch_examples() {
        let zero = bloch_decompose(&DensityOperator::maximally_mixed(4)).unwrap();
        assert_eq!(zero.max_abs_diff(&BlochForm::default()), 0.0);

        let bell = pure_to_density(&PureSchmidtState::from_alpha_sq(0.5).unwrap());
        let form = bloch_decompose(&bell).unwrap();
        assert!(form.max_abs_diff(&BlochForm::bell_diagonal([1.0, -1.0, 1.0])) < 1e-14);

        for x in [-1.0, -0.3, 0.2, 0.9] {
            let w = WernerState::new(x).unwrap();
            let t = w.correlation();
            let form = bloch_decompose(&werner_to_density(&w)).unwrap();
            assert!(form.max_abs_diff(&BlochForm::bell_diagonal([t, t, t])) < 1e-14);
        }
    }

    #[test]
    fn bloch_compose_inverts_and_rejects_unphysical() {
        let rho = bloch_compose(&BlochForm::default()).unwrap();
        assert!(rho.matrix().approx_eq(&ComplexMatrix::identity(4).scale(0.25), 1e-15));

        let err = bloch_compose(&BlochForm::bell_diagonal([1.0, 1.0, 1.0])).unwrap_err();
        match err {
            Error::UnphysicalBloch { min_eigenvalue } => assert!((min_eigenvalue + 0.5).abs() < 1e-12),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn x_state_extraction() {
        let bell = pure_to_density(&PureSchmidtState::from_alpha_sq(0.5).unwrap());
        let x = as_x_state(&bell).unwrap();
        let expected = XState::new(0.5, 0.0, 0.0, 0.5, 0.5, 0.0).unwrap();
        assert!(x.max_abs_diff(&expected) < 1e-15);

        let mut m = ComplexMatrix::identity(4).scale(0.25);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        m[(1, 0)] = Complex64::new(0.1, 0.0);
        let rho = DensityOperator::new(m).unwrap();
        assert_eq!(as_x_state(&rho).unwrap_err(), Error::NotXShaped { row: 1, col: 2, value: 0.1 });
    }

    #[test]
    fn x_state_validation() {
        assert!(XState::new(0.5, 0.0, 0.0, 0.5, 0.6, 0.0).is_err());
        assert!(XState::new(0.5, 0.1, 0.0, 0.5, 0.0, 0.0).is_err());
        assert!(XState::new(0.25, 0.25, 0.25, 0.25, 0.25, -0.25).is_ok());
    }
}
