//! Symmetric 1→2 cloning machines applied locally to each qubit of a
//! two-qubit state, the non-local Bužek–Hillery map, and an explicit
//! full-unitary simulation used as an oracle for the Bloch-space route.
//!
//! A local machine acts on (input, blank, ancilla) as
//!
//! ```text
//! U|0⟩|0⟩|X⟩ = |a| |00⟩|A⟩  + |b| (|01⟩ + |10⟩)|B⟩
//! U|1⟩|0⟩|X⟩ = |a| |11⟩|A′⟩ + |b| (|10⟩ + |01⟩)|B′⟩
//! ```
//!
//! and each reduced clone sees a single-qubit map that shrinks the Bloch
//! vector by `|a||b|√μ` in the x/y plane and by `|a|²` along z.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    fidelity_pure, partial_trace_matrix, tensor, ComplexMatrix, DensityOperator, PureState, DEFAULT_TOLERANCE,
};
use crate::states::{bloch_compose, bloch_decompose, PureSchmidtState};

/// Largest value of the ancilla-overlap parameter `Re(⟨A|B′⟩ + ⟨B|A′⟩)²`.
pub const MU_MAX: f64 = 4.0;

/// Amplitudes `(|a|, |b|, |c|)` of a symmetric cloning transformation and
/// the ancilla-overlap parameter `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineCoefficients {
    a_abs: f64,
    b_abs: f64,
    c_abs: f64,
    mu: f64,
}

impl MachineCoefficients {
    /// Validates ranges and the normalization `a² + 2b² + c² = 1`.
    pub fn new(a_abs: f64, b_abs: f64, c_abs: f64, mu: f64) -> Result<Self> {
        for (name, v) in [("|a|", a_abs), ("|b|", b_abs), ("|c|", c_abs)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if !(0.0..=MU_MAX).contains(&mu) {
            return Err(Error::OutOfRange(format!("mu must lie in [0, 4], got {mu}")));
        }
        let norm = a_abs * a_abs + 2.0 * b_abs * b_abs + c_abs * c_abs;
        if (norm - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::NotNormalized { deviation: (norm - 1.0).abs() });
        }
        Ok(Self { a_abs, b_abs, c_abs, mu })
    }

    /// `c = 0` machine from `|a|²`, with `|b|² = (1 − |a|²)/2` and the given `μ`.
    pub fn from_a_sq(a_sq: f64, mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a_sq) {
            return Err(Error::OutOfRange(format!("|a|^2 must lie in [0, 1], got {a_sq}")));
        }
        Self::new(a_sq.sqrt(), ((1.0 - a_sq) / 2.0).sqrt(), 0.0, mu)
    }

    pub fn a_abs(&self) -> f64 {
        self.a_abs
    }

    pub fn b_abs(&self) -> f64 {
        self.b_abs
    }

    pub fn c_abs(&self) -> f64 {
        self.c_abs
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    fn require_c_zero(&self) -> Result<()> {
        if self.c_abs > DEFAULT_TOLERANCE {
            return Err(Error::OutOfRange(format!(
                "machines with |c| != 0 are not supported here (|c| = {})",
                self.c_abs
            )));
        }
        Ok(())
    }
}

/// The non-local Bužek–Hillery machine on an `M`-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonLocalBhSpec {
    dim: usize,
}

impl NonLocalBhSpec {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::OutOfRange(format!("dimension must be at least 2, got {dim}")));
        }
        Ok(Self { dim })
    }

    /// `M = 4`: a pair of qubits cloned as one four-level system.
    pub fn two_qubits() -> Self {
        Self { dim: 4 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Weight of the perfectly copied branch, `√(2/(M+1))`.
    pub fn c_coef(&self) -> f64 {
        (2.0 / (self.dim as f64 + 1.0)).sqrt()
    }

    /// Weight of each symmetrized error branch, `√(1/(2(M+1)))`.
    pub fn d_coef(&self) -> f64 {
        (1.0 / (2.0 * (self.dim as f64 + 1.0))).sqrt()
    }

    /// Each clone is `η ρ + (1 − η) I/M` with `η = c² + (M − 2) d²`.
    pub fn shrink(&self) -> f64 {
        let (c, d) = (self.c_coef(), self.d_coef());
        c * c + (self.dim as f64 - 2.0) * d * d
    }
}

/// The named machines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MachinePreset {
    LocalBh,
    Universal,
    OnePauliLike,
    TwoPauliLike,
    NonlocalBh,
}

impl MachinePreset {
    pub const ALL: [MachinePreset; 5] = [
        MachinePreset::LocalBh,
        MachinePreset::Universal,
        MachinePreset::OnePauliLike,
        MachinePreset::TwoPauliLike,
        MachinePreset::NonlocalBh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MachinePreset::LocalBh => "local-bh",
            MachinePreset::Universal => "universal",
            MachinePreset::OnePauliLike => "one-pauli-like",
            MachinePreset::TwoPauliLike => "two-pauli-like",
            MachinePreset::NonlocalBh => "nonlocal-bh",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            MachinePreset::LocalBh => "Buzek-Hillery cloner applied to each qubit (|a|^2=2/3, |b|^2=1/6)",
            MachinePreset::Universal => "optimal universal local cloner (|a|^2=1/2, |b|=1/2)",
            MachinePreset::OnePauliLike => {
                "dephasing-like local cloner matched to the one-Pauli channel (|a|=1, |b|=0)"
            }
            MachinePreset::TwoPauliLike => {
                "state-dependent local cloner matched to the two-Pauli channel (|a|^2=(4+sqrt79)/21)"
            }
            MachinePreset::NonlocalBh => "Buzek-Hillery cloner on the joint 4-level system (0.6 rho + 0.1 I)",
        }
    }

    /// Comma-separated list of every preset name.
    pub fn valid_names() -> String {
        Self::ALL.iter().map(|p| p.name()).collect::<Vec<_>>().join(", ")
    }

    /// Local-machine coefficients; `None` for the non-local machine.
    pub fn coefficients(self) -> Option<MachineCoefficients> {
        let (a_sq, b_sq) = match self {
            MachinePreset::LocalBh => (2.0 / 3.0, 1.0 / 6.0),
            MachinePreset::Universal => (0.5, 0.25),
            MachinePreset::OnePauliLike => (1.0, 0.0),
            MachinePreset::TwoPauliLike => {
                let r = 79f64.sqrt();
                ((4.0 + r) / 21.0, (17.0 - r) / 42.0)
            }
            MachinePreset::NonlocalBh => return None,
        };
        Some(
            MachineCoefficients::new(f64::sqrt(a_sq), f64::sqrt(b_sq), 0.0, MU_MAX)
                .expect("preset coefficients are normalized"),
        )
    }

    pub fn machine(self) -> Machine {
        match self.coefficients() {
            Some(m) => Machine::Local(m),
            None => Machine::NonLocalBh(NonLocalBhSpec::two_qubits()),
        }
    }
}

impl fmt::Display for MachinePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MachinePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownMachine { name: s.to_string(), valid: Self::valid_names() })
    }
}

/// A cloning machine acting on two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Machine {
    /// The same symmetric cloner applied to each qubit.
    Local(MachineCoefficients),
    /// The Bužek–Hillery cloner acting on both qubits jointly.
    NonLocalBh(NonLocalBhSpec),
}

impl From<MachinePreset> for Machine {
    fn from(p: MachinePreset) -> Self {
        p.machine()
    }
}

impl From<MachineCoefficients> for Machine {
    fn from(m: MachineCoefficients) -> Self {
        Machine::Local(m)
    }
}

impl Machine {
    /// Reduced state of one clone pair.
    pub fn apply(&self, rho_in: &DensityOperator) -> Result<DensityOperator> {
        match self {
            Machine::Local(m) => apply_local_cloner(m, rho_in),
            Machine::NonLocalBh(spec) => apply_bh_depolarizing(spec, rho_in),
        }
    }
}

/// Per-axis shrink factors `(λ_xy, λ_z) = (|a||b|√μ, |a|²)` of the
/// single-qubit clone map. At `μ = 4` this is `(2|a||b|, |a|²)`.
pub fn single_qubit_shrink(m: &MachineCoefficients) -> Result<(f64, f64)> {
    m.require_c_zero()?;
    Ok((m.a_abs * m.b_abs * m.mu.sqrt(), m.a_abs * m.a_abs))
}

/// Reduced state `ρ_{a₁b₁}` of one clone pair when the machine is applied
/// to each qubit of `rho_in`, computed in Bloch space.
pub fn apply_local_cloner(m: &MachineCoefficients, rho_in: &DensityOperator) -> Result<DensityOperator> {
    let (xy, z) = single_qubit_shrink(m)?;
    let shrink = [xy, xy, z];
    let mut form = bloch_decompose(rho_in)?;
    for i in 0..3 {
        form.local_a[i] *= shrink[i];
        form.local_b[i] *= shrink[i];
        for j in 0..3 {
            form.correlation[i][j] *= shrink[i] * shrink[j];
        }
    }
    bloch_compose(&form).map_err(|e| Error::Internal(format!("cloner output is unphysical: {e}")))
}

fn apply_bh_depolarizing(spec: &NonLocalBhSpec, rho_in: &DensityOperator) -> Result<DensityOperator> {
    if rho_in.dim() != spec.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}-level machine applied to a {}-dim state",
            spec.dim(),
            rho_in.dim()
        )));
    }
    let eta = spec.shrink();
    let n = spec.dim();
    let m = &rho_in.matrix().scale(eta) + &ComplexMatrix::identity(n).scale((1.0 - eta) / n as f64);
    Ok(DensityOperator::from_matrix_unchecked(m))
}

/// Non-local Bužek–Hillery clone of a two-qubit state: `0.6 ρ + 0.1 I`.
pub fn apply_nonlocal_bh(rho_in: &DensityOperator) -> Result<DensityOperator> {
    apply_bh_depolarizing(&NonLocalBhSpec::two_qubits(), rho_in)
}

/// Single-sided cloner unitary on (input, blank, ancilla), basis index
/// `4·clone₁ + 2·clone₂ + ancilla`.
///
/// Ancilla kets: `|A⟩ = |0⟩`, `|B⟩ = |A⊥⟩ = |1⟩`, `|A′⟩ = e^{−iθ}|1⟩`,
/// `|B′⟩ = e^{iθ}|0⟩` with `cos θ = √μ/2`, so `⟨A|B′⟩ + ⟨B|A′⟩ = √μ` is
/// real. At `μ = 4` this is the usual `|A′⟩ = |A⊥⟩`, `|B′⟩ = |A⟩`. Columns
/// not fixed by the transformation are completed by Gram–Schmidt.
pub fn cloner_unitary(m: &MachineCoefficients) -> Result<ComplexMatrix> {
    m.require_c_zero()?;
    let theta = (m.mu.sqrt() / 2.0).clamp(-1.0, 1.0).acos();
    let (a, b) = (m.a_abs, m.b_abs);
    let zero = Complex64::new(0.0, 0.0);

    let mut from_zero = vec![zero; 8];
    from_zero[0b000] = Complex64::new(a, 0.0);
    from_zero[0b011] = Complex64::new(b, 0.0);
    from_zero[0b101] = Complex64::new(b, 0.0);

    let mut from_one = vec![zero; 8];
    from_one[0b111] = Complex64::from_polar(a, -theta);
    from_one[0b100] = Complex64::from_polar(b, theta);
    from_one[0b010] = Complex64::from_polar(b, theta);

    let mut basis = vec![from_zero, from_one];
    for k in 0..8 {
        if basis.len() == 8 {
            break;
        }
        let mut v = PureState::basis(8, k).amplitudes().to_vec();
        for u in &basis {
            let overlap: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    if basis.len() != 8 {
        return Err(Error::Internal("could not complete the cloner unitary".into()));
    }

    // Inputs |0,0,0⟩ (index 0) and |1,0,0⟩ (index 4) map to the two fixed columns.
    let mut column_of = [0usize; 8];
    let mut next = 2;
    for (col, slot) in column_of.iter_mut().enumerate() {
        *slot = match col {
            0 => 0,
            4 => 1,
            _ => {
                next += 1;
                next - 1
            }
        };
    }
    Ok(ComplexMatrix::from_fn(8, 8, |i, j| basis[column_of[j]][i]))
}

/// Full 64-dimensional output of the cloner applied on both sides.
/// Subsystem order: A-clone₁, A-clone₂, A-ancilla, B-clone₁, B-clone₂, B-ancilla.
pub fn full_output_state(m: &MachineCoefficients, s: &PureSchmidtState) -> Result<PureState> {
    let u = cloner_unitary(m)?;
    let uu = tensor(&u, &u);
    let mut input = vec![Complex64::new(0.0, 0.0); 64];
    input[0] = Complex64::new(s.alpha(), 0.0); // |0,0,0⟩|0,0,0⟩
    input[4 * 8 + 4] = Complex64::new(s.beta(), 0.0); // |1,0,0⟩|1,0,0⟩
    PureState::new(uu.apply(&input))
}

/// Both reduced clone pairs `(ρ_{a₁b₁}, ρ_{a₂b₂})` from the full simulation.
pub fn full_unitary_clone_pairs(
    m: &MachineCoefficients,
    s: &PureSchmidtState,
) -> Result<(DensityOperator, DensityOperator)> {
    let psi = full_output_state(m, s)?;
    let full = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
    let dims = [2; 6];
    let first = partial_trace_matrix(&full, &dims, &[0, 3])?;
    let second = partial_trace_matrix(&full, &dims, &[1, 4])?;
    Ok((DensityOperator::from_matrix_unchecked(first), DensityOperator::from_matrix_unchecked(second)))
}

/// Clone pair `ρ_{a₁b₁}` obtained by explicit unitary simulation and partial
/// tracing; independent of the Bloch-space route in [`apply_local_cloner`].
pub fn full_unitary_oracle(m: &MachineCoefficients, s: &PureSchmidtState) -> Result<DensityOperator> {
    full_unitary_clone_pairs(m, s).map(|(first, _)| first)
}

/// `⟨ψ|ρ_out|ψ⟩` for the Schmidt input `ψ`.
pub fn machine_fidelity(machine: impl Into<Machine>, s: &PureSchmidtState) -> Result<f64> {
    let machine = machine.into();
    let out = machine.apply(&s.vector().projector())?;
    fidelity_pure(&s.vector(), &out)
}

/// Fidelity averaged uniformly over `α² ∈ [0, 1]`.
pub fn average_fidelity(machine: impl Into<Machine>) -> Result<f64> {
    let machine = machine.into();
    let f = |alpha_sq: f64| -> Result<f64> {
        machine_fidelity(machine, &PureSchmidtState::from_alpha_sq(alpha_sq.clamp(0.0, 1.0))?)
    };
    adaptive_simpson(f, 0.0, 1.0, 1e-8)
}

/// Single-qubit fidelity of one clone, `⟨φ|ρ_clone|φ⟩`, for a pure qubit
/// with Bloch vector `r`.
pub fn single_qubit_fidelity(m: &MachineCoefficients, r: [f64; 3]) -> Result<f64> {
    let (xy, z) = single_qubit_shrink(m)?;
    Ok(0.5 * (1.0 + xy * (r[0] * r[0] + r[1] * r[1]) + z * r[2] * r[2]))
}

const MAX_SIMPSON_DEPTH: u32 = 40;

/// Adaptive Simpson quadrature with absolute error target `eps`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, eps: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    fn recurse<F: Fn(f64) -> Result<f64>>(
        f: &F,
        (a, fa): (f64, f64),
        (m, fm): (f64, f64),
        (b, fb): (f64, f64),
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<f64> {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            return Ok(left + right + delta / 15.0);
        }
        Ok(recurse(f, (a, fa), (lm, flm), (m, fm), left, eps / 2.0, depth - 1)?
            + recurse(f, (m, fm), (rm, frm), (b, fb), right, eps / 2.0, depth - 1)?)
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(&f, (a, fa), (m, fm), (b, fb), whole, eps, MAX_SIMPSON_DEPTH)
}

/// `|ψ⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn qubit_from_angles(theta: f64, phi: f64) -> PureState {
    PureState::new(vec![Complex64::new((theta / 2.0).cos(), 0.0), Complex64::from_polar((theta / 2.0).sin(), phi)])
        .expect("unit vector by construction")
}

/// One clone of a single qubit `psi`, simulated with the full cloner unitary
/// (trace over the second clone and the ancilla).
pub fn single_qubit_clone(m: &MachineCoefficients, psi: &PureState) -> Result<DensityOperator> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a qubit, got dimension {}", psi.dim())));
    }
    let u = cloner_unitary(m)?;
    let mut input = vec![Complex64::new(0.0, 0.0); 8];
    input[0] = psi.amplitudes()[0];
    input[4] = psi.amplitudes()[1];
    let out = u.apply(&input);
    let full = ComplexMatrix::outer(&out, &out);
    partial_trace_matrix(&full, &[2, 2, 2], &[0]).map(DensityOperator::from_matrix_unchecked)
}
