//! Entanglement and discord of two-qubit states.
//!
//! Closed forms for X-states and Bell-diagonal states sit next to general
//! routes that do not depend on them: the Wootters spin-flip construction for
//! concurrence and a direct minimization over projective measurements on
//! qubit B for discord. Entropies are in bits.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{
    eig_hermitian, eigvals_hermitian, partial_trace, pauli, pauli_pair, von_neumann_entropy, ComplexMatrix,
    DensityOperator, DEFAULT_TOLERANCE,
};
use crate::states::{bloch_compose, BlochForm, XState};

/// `y·log₂ y` with `0·log 0 = 0`.
fn xlog2x(y: f64) -> f64 {
    if y > 0.0 {
        y * y.log2()
    } else {
        0.0
    }
}

/// Binary Shannon entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -(xlog2x(p) + xlog2x(1.0 - p))
}

/// Wootters concurrence `max{0, √λ₁ − √λ₂ − √λ₃ − √λ₄}`, where `λᵢ` are the
/// descending eigenvalues of `ρ(σ₂⊗σ₂)ρ*(σ₂⊗σ₂)`.
///
/// The `√λᵢ` are computed as the singular values of `τ = Wᵀ(σ₂⊗σ₂)W`,
/// with `ρ = W W†` built from the spectral decomposition. Taking singular
/// values directly avoids the square root of a nearly singular spectrum,
/// which would amplify roundoff to `~1e-8` for rank-deficient states.
pub fn concurrence_wootters(rho: &DensityOperator) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let (values, vectors) = eig_hermitian(rho.matrix())?;
    // Eigenvalues at roundoff level are zeros of the exact spectrum.
    let weights: Vec<f64> = values.iter().map(|&p| if p > 1e-14 { p.sqrt() } else { 0.0 }).collect();
    let w = ComplexMatrix::from_fn(4, 4, |i, j| vectors[(i, j)] * weights[j]);
    let yy = pauli_pair(2, 2);
    let wt = ComplexMatrix::from_fn(4, 4, |i, j| w[(j, i)]);
    let tau = &(&wt * &yy) * &w;
    // Singular values of τ are the nonnegative eigenvalues of [[0, τ], [τ†, 0]].
    let zero = Complex64::new(0.0, 0.0);
    let block = ComplexMatrix::from_fn(8, 8, |i, j| match (i < 4, j < 4) {
        (true, false) => tau[(i, j - 4)],
        (false, true) => tau[(j, i - 4)].conj(),
        _ => zero,
    });
    let sv = eigvals_hermitian(&block)?;
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

/// Closed-form concurrence of an X-state.
pub fn concurrence_x(x: &XState) -> f64 {
    let outer = (x.rho11 * x.rho44).max(0.0).sqrt();
    let inner = (x.rho22 * x.rho33).max(0.0).sqrt();
    let mu = [outer + x.rho14.abs(), outer - x.rho14.abs(), inner + x.rho23.abs(), inner - x.rho23.abs()];
    let largest = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = mu.iter().sum();
    (2.0 * largest - total).max(0.0)
}

/// Entanglement of formation `h((1 + √(1 − C²))/2)` from the concurrence.
/// `c` is clamped to `[0, 1]`.
pub fn eof(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 + 0.5 * (1.0 - c * c).sqrt())
}

/// Which conditional-entropy candidate attained the discord minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscordBranch {
    /// Measurement of B along σ₃.
    C1,
    /// Measurement of B in the σ₁/σ₂ plane.
    C2,
}

impl fmt::Display for DiscordBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscordBranch::C1 => "C1",
            DiscordBranch::C2 => "C2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordIntermediates {
    /// `S(ρ)`.
    pub s_rho: f64,
    /// `S(ρ_B)`.
    pub s_rho_b: f64,
    pub c1: f64,
    pub c2: f64,
    pub upsilon: f64,
}

impl DiscordIntermediates {
    /// `C1` wins ties.
    pub fn branch(&self) -> DiscordBranch {
        if self.c1 <= self.c2 {
            DiscordBranch::C1
        } else {
            DiscordBranch::C2
        }
    }
}

/// Eigenvalues of an X-state: one pair from each 2×2 block.
fn x_state_spectrum(x: &XState) -> [f64; 4] {
    let block = |p: f64, q: f64, c: f64| {
        let mean = 0.5 * (p + q);
        let radius = (0.25 * (p - q) * (p - q) + c * c).sqrt();
        [mean + radius, mean - radius]
    };
    let [a, b] = block(x.rho11, x.rho44, x.rho14);
    let [c, d] = block(x.rho22, x.rho33, x.rho23);
    [a, b, c, d]
}

/// `−p·log₂(p/total)`, zero when either probability vanishes.
fn conditional_term(p: f64, total: f64) -> f64 {
    if p > 0.0 && total > 0.0 {
        -p * (p / total).log2()
    } else {
        0.0
    }
}

/// Discord `D_B = S(ρ_B) − S(ρ) + min{C₁, C₂}` of an X-state with real
/// coherences.
pub fn discord_x(x: &XState) -> (f64, DiscordIntermediates) {
    let s_rho = -x_state_spectrum(x).iter().map(|&l| xlog2x(l.max(0.0))).sum::<f64>();
    let b0 = x.rho11 + x.rho33;
    let b1 = x.rho22 + x.rho44;
    let s_rho_b = binary_entropy(b0);

    let c1 = conditional_term(x.rho11, b0)
        + conditional_term(x.rho22, b1)
        + conditional_term(x.rho33, b0)
        + conditional_term(x.rho44, b1);
    let z = x.rho11 + x.rho22 - x.rho33 - x.rho44;
    let coh = x.rho14.abs() + x.rho23.abs();
    let upsilon = (z * z + 4.0 * coh * coh).sqrt().min(1.0);
    let c2 = binary_entropy(0.5 * (1.0 + upsilon));

    let mut value = s_rho_b - s_rho + c1.min(c2);
    if value < 0.0 && value > -DEFAULT_TOLERANCE {
        value = 0.0;
    }
    (value, DiscordIntermediates { s_rho, s_rho_b, c1, c2, upsilon })
}

/// Grid and stopping tolerance for [`discord_oracle_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    /// Polar grid points on `[0, π]`, endpoints included.
    pub theta_points: usize,
    /// Azimuthal grid points on `[0, 2π)`.
    pub phi_points: usize,
    /// Number of best grid points refined locally.
    pub refine_starts: usize,
    /// Simplex size at which local refinement stops.
    pub tolerance: f64,
    pub execution: Execution,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self { theta_points: 64, phi_points: 128, refine_starts: 3, tolerance: 1e-7, execution: Execution::default() }
    }
}

/// Partial traces `R_k = Tr_B[(I⊗σ_k)ρ]`, `k = 0..3`, from which the
/// post-measurement states of A follow for any measurement direction on B.
struct MeasurementKernel {
    r: [[[Complex64; 2]; 2]; 4],
}

impl MeasurementKernel {
    fn new(rho: &DensityOperator) -> Self {
        let m = rho.matrix();
        let mut r = [[[Complex64::new(0.0, 0.0); 2]; 2]; 4];
        for (k, rk) in r.iter_mut().enumerate() {
            let sigma = pauli(k);
            for (a, row) in rk.iter_mut().enumerate() {
                for (ap, entry) in row.iter_mut().enumerate() {
                    for b in 0..2 {
                        for bp in 0..2 {
                            *entry += m[(2 * a + b, 2 * ap + bp)] * sigma[(bp, b)];
                        }
                    }
                }
            }
        }
        Self { r }
    }

    fn conditional_entropy(&self, theta: f64, phi: f64) -> f64 {
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            // Block of A after outcome `sign`: (R₀ ± Σ n_k R_k)/2.
            let mut block = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (a, row) in block.iter_mut().enumerate() {
                for (ap, entry) in row.iter_mut().enumerate() {
                    let mut z = self.r[0][a][ap];
                    for (rk, nk) in self.r[1..].iter().zip(n) {
                        z += rk[a][ap] * (sign * nk);
                    }
                    *entry = z * 0.5;
                }
            }
            let p = block[0][0].re + block[1][1].re;
            if p <= 1e-15 {
                continue;
            }
            let det = (block[0][0] * block[1][1] - block[0][1] * block[1][0]).re / (p * p);
            let disc = (1.0 - 4.0 * det).max(0.0).sqrt();
            total += p * binary_entropy(0.5 * (1.0 + disc));
        }
        total
    }
}

/// Conditional entropy `Σ_k p_k S(ρ_{A|k})` after measuring qubit B
/// projectively along the direction `(θ, φ)`.
pub fn measured_conditional_entropy(rho: &DensityOperator, theta: f64, phi: f64) -> f64 {
    MeasurementKernel::new(rho).conditional_entropy(theta, phi)
}

/// Discord with projective measurements on B, found by brute force: a
/// `theta_points × phi_points` grid over measurement directions followed by
/// Nelder–Mead refinement from the best grid points.
pub fn discord_oracle_with(rho: &DensityOperator, settings: &OracleSettings) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("discord needs a two-qubit state, got dimension {}", rho.dim())));
    }
    if settings.theta_points < 2 || settings.phi_points < 1 {
        return Err(Error::OutOfRange("oracle grid needs at least 2x1 points".into()));
    }
    let s_b = von_neumann_entropy(&partial_trace(rho, &[2, 2], &[1])?);
    let s = von_neumann_entropy(rho);

    let (nt, np) = (settings.theta_points, settings.phi_points);
    let angles = |k: usize| {
        let theta = std::f64::consts::PI * (k / np) as f64 / (nt - 1) as f64;
        let phi = 2.0 * std::f64::consts::PI * (k % np) as f64 / np as f64;
        (theta, phi)
    };
    let kernel = MeasurementKernel::new(rho);
    let values = settings.execution.map_indices(nt * np, |k| {
        let (theta, phi) = angles(k);
        kernel.conditional_entropy(theta, phi)
    });

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let f = |p: [f64; 2]| kernel.conditional_entropy(p[0], p[1]);
    let step = [std::f64::consts::PI / (nt - 1) as f64, 2.0 * std::f64::consts::PI / np as f64];
    let best = order
        .iter()
        .take(settings.refine_starts.max(1))
        .map(|&k| {
            let (theta, phi) = angles(k);
            nelder_mead_2d(f, [theta, phi], step, settings.tolerance).min(values[k])
        })
        .fold(f64::INFINITY, f64::min);

    Ok(s_b - s + best)
}

/// [`discord_oracle_with`] using the default 64×128 grid.
pub fn discord_oracle(rho: &DensityOperator) -> Result<f64> {
    discord_oracle_with(rho, &OracleSettings::default())
}

/// Minimizes `f` over the plane with a Nelder–Mead simplex; returns the best
/// value found.
fn nelder_mead_2d(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], step: [f64; 2], tol: f64) -> f64 {
    let mut simplex = [start, [start[0] + step[0], start[1]], [start[0], start[1] + step[1]]];
    let mut vals = simplex.map(&f);
    for _ in 0..2000 {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let [lo, mid, hi] = idx;
        let size = (0..2)
            .map(|d| (simplex[hi][d] - simplex[lo][d]).abs().max((simplex[mid][d] - simplex[lo][d]).abs()))
            .fold(0.0, f64::max);
        if size < tol {
            break;
        }
        let centroid = [0.5 * (simplex[lo][0] + simplex[mid][0]), 0.5 * (simplex[lo][1] + simplex[mid][1])];
        let towards = |t: f64| {
            [centroid[0] + t * (simplex[hi][0] - centroid[0]), centroid[1] + t * (simplex[hi][1] - centroid[1])]
        };
        let reflected = towards(-1.0);
        let fr = f(reflected);
        if fr < vals[lo] {
            let expanded = towards(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[hi] = expanded;
                vals[hi] = fe;
            } else {
                simplex[hi] = reflected;
                vals[hi] = fr;
            }
        } else if fr < vals[mid] {
            simplex[hi] = reflected;
            vals[hi] = fr;
        } else {
            let contracted = if fr < vals[hi] { towards(-0.5) } else { towards(0.5) };
            let fc = f(contracted);
            if fc < vals[hi].min(fr) {
                simplex[hi] = contracted;
                vals[hi] = fc;
            } else {
                for k in [mid, hi] {
                    simplex[k] = [
                        simplex[lo][0] + 0.5 * (simplex[k][0] - simplex[lo][0]),
                        simplex[lo][1] + 0.5 * (simplex[k][1] - simplex[lo][1]),
                    ];
                    vals[k] = f(simplex[k]);
                }
            }
        }
    }
    vals.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Bell-diagonal state with correlations `(t₁, t₂, t₃)`.
pub fn bell_diagonal_state(t: [f64; 3]) -> Result<DensityOperator> {
    bloch_compose(&BlochForm::bell_diagonal(t))
}

/// Discord of a Werner-type state with `t₁ = t₂ = t₃ = t`:
/// `(1+t)/4·log(1+t) + (1−3t)/4·log(1−3t) − (1−t)/2·log(1−t)`.
pub fn werner_discord_closed(t: f64) -> Result<f64> {
    if !(-1.0 - DEFAULT_TOLERANCE..=1.0 / 3.0 + DEFAULT_TOLERANCE).contains(&t) {
        return Err(Error::OutOfRange(format!("isotropic correlation t must lie in [-1, 1/3], got {t}")));
    }
    Ok(xlog2x(1.0 + t) / 4.0 + xlog2x(1.0 - 3.0 * t) / 4.0 - xlog2x(1.0 - t) / 2.0)
}

fn require_bell_diagonal_physical(t1: f64, t3: f64) -> Result<()> {
    // Eigenvalues with t₂ = t₁: (1+t₃)/4 twice, (1 ± 2t₁ − t₃)/4.
    let eigenvalues = [1.0 + t3, 1.0 + 2.0 * t1 - t3, 1.0 - 2.0 * t1 - t3].map(|v| v / 4.0);
    if let Some(v) = eigenvalues.iter().find(|&&v| v < -DEFAULT_TOLERANCE) {
        return Err(Error::OutOfRange(format!(
            "Bell-diagonal correlations (t1 = t2 = {t1}, t3 = {t3}) give eigenvalue {v:.3e}"
        )));
    }
    Ok(())
}

/// Discord of the Bell-diagonal state with `t₂ = t₁`, in the regime
/// `|t₁| ≥ |t₃|` where measuring B in the σ₁/σ₂ plane is optimal.
pub fn bell_diag_discord_closed(t1: f64, t3: f64) -> Result<f64> {
    require_bell_diagonal_physical(t1, t3)?;
    Ok(xlog2x(1.0 + 2.0 * t1 - t3) / 4.0 + xlog2x(1.0 - 2.0 * t1 - t3) / 4.0 + xlog2x(1.0 + t3) / 2.0
        - xlog2x(1.0 + t1) / 2.0
        - xlog2x(1.0 - t1) / 2.0)
}

/// `max{0, (√((3t−1)²) − 3√((t+1)²))/4}`, evaluated literally.
pub fn werner_concurrence_closed(t: f64) -> f64 {
    (0.25 * ((3.0 * t - 1.0).abs() - 3.0 * (t + 1.0).abs())).max(0.0)
}

/// `max{0, (√((2t₁+t₃−1)²) − √((2t₁+t₃+1)²) − 2√((t₃+1)²))/4}`, evaluated
/// literally. It agrees with the Wootters value only while
/// `2t₁ + t₃ ≥ −1`; [`bell_diag_concurrence`] is exact everywhere.
pub fn bell_diag_concurrence_closed(t1: f64, t3: f64) -> f64 {
    let s = 2.0 * t1 + t3;
    (0.25 * ((s - 1.0).abs() - (s + 1.0).abs() - 2.0 * (t3 + 1.0).abs())).max(0.0)
}

/// Exact concurrence of the Bell-diagonal state with `t₂ = t₁`:
/// `max{0, 2λ_max − 1}` over its Bell-basis weights.
pub fn bell_diag_concurrence(t1: f64, t3: f64) -> Result<f64> {
    require_bell_diagonal_physical(t1, t3)?;
    let largest =
        [1.0 + t3, 1.0 + 2.0 * t1 - t3, 1.0 - 2.0 * t1 - t3].iter().map(|v| v / 4.0).fold(f64::NEG_INFINITY, f64::max);
    Ok((2.0 * largest - 1.0).max(0.0))
}

/// Concurrence, entanglement of formation and discord of an X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub eof: f64,
    pub discord: f64,
    pub branch: DiscordBranch,
}

pub fn correlation_report(x: &XState) -> CorrelationReport {
    let concurrence = concurrence_x(x);
    let (discord, parts) = discord_x(x);
    CorrelationReport {
        concurrence,
        eof: if concurrence == 0.0 { 0.0 } else { eof(concurrence) },
        discord,
        branch: parts.branch(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloners::{apply_local_cloner, MachinePreset};
    use crate::states::{as_x_state, pure_to_density, PureSchmidtState};

    fn bell_x() -> XState {
        XState::new(0.5, 0.0, 0.0, 0.5, 0.5, 0.0).unwrap()
    }

    #[test]
    fn concurrence_examples() {
        let bell = bell_x().to_density();
        assert!((concurrence_wootters(&bell).unwrap() - 1.0).abs() < 1e-7);
        assert!(concurrence_wootters(&DensityOperator::maximally_mixed(4)).unwrap().abs() < 1e-12);
        assert!((concurrence_x(&bell_x()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn concurrence_of_cloner_outputs_at_half() {
        let s = PureSchmidtState::from_alpha_sq(0.5).unwrap();
        let bh = apply_local_cloner(&MachinePreset::LocalBh.coefficients().unwrap(), &pure_to_density(&s)).unwrap();
        assert!((concurrence_x(&as_x_state(&bh).unwrap()) - 1.0 / 6.0).abs() < 1e-14);
        assert!((concurrence_wootters(&bh).unwrap() - 1.0 / 6.0).abs() < 1e-10);

        let uni = apply_local_cloner(&MachinePreset::Universal.coefficients().unwrap(), &pure_to_density(&s)).unwrap();
        assert!((concurrence_x(&as_x_state(&uni).unwrap()) - 0.125).abs() < 1e-14);
        assert!((concurrence_wootters(&uni).unwrap() - 0.125).abs() < 1e-10);
    }

    #[test]
    fn eof_examples() {
        assert_eq!(eof(0.0), 0.0);
        assert!((eof(1.0) - 1.0).abs() < 1e-15);
        // h(p) at p = (1 + sqrt(35/36))/2, evaluated by hand-expanded logs
        let p: f64 = 0.5 + 0.5 * (35.0f64 / 36.0).sqrt();
        let expected = -p * p.ln() / 2f64.ln() - (1.0 - p) * (1.0 - p).ln() / 2f64.ln();
        assert!((eof(1.0 / 6.0) - expected).abs() < 1e-15);
        assert!((eof(1.0 / 6.0) - 0.060_124_911_349).abs() < 1e-11);
    }

    #[test]
    fn discord_examples() {
        let product = XState::new(0.3, 0.0, 0.0, 0.7, 0.0, 0.0).unwrap();
        assert!(discord_x(&product).0.abs() < 1e-15);
        let (d, parts) = discord_x(&bell_x());
        assert!((d - 1.0).abs() < 1e-15);
        assert!((parts.upsilon - 1.0).abs() < 1e-15);
        assert!(discord_oracle(&DensityOperator::maximally_mixed(4)).unwrap().abs() < 1e-9);
        assert!((discord_oracle(&bell_x().to_density()).unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn werner_closed_forms() {
        assert!(werner_discord_closed(0.0).unwrap().abs() < 1e-15);
        assert!((werner_discord_closed(-1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(werner_discord_closed(0.5).is_err());
        let t = -4.0 / 9.0;
        let x = as_x_state(&bell_diagonal_state([t, t, t]).unwrap()).unwrap();
        assert!((werner_discord_closed(t).unwrap() - discord_x(&x).0).abs() < 1e-12);
        assert_eq!(werner_concurrence_closed(0.0), 0.0);
        assert!((werner_concurrence_closed(t) - concurrence_x(&x)).abs() < 1e-12);
    }

    #[test]
    fn bell_diag_closed_forms() {
        assert!(bell_diag_discord_closed(0.0, 0.0).unwrap().abs() < 1e-15);
        for t in [-0.9, -0.4, 0.1, 0.3] {
            let a = bell_diag_discord_closed(t, t).unwrap();
            let b = werner_discord_closed(t).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        assert!(bell_diag_discord_closed(0.9, 0.5).is_err());
        assert!((bell_diag_concurrence(-0.5, -0.25).unwrap() - 0.125).abs() < 1e-12);
        assert!((bell_diag_concurrence_closed(-0.5, -0.25) - 0.125).abs() < 1e-12);
        // Agreement breaks down once 2t1 + t3 < -1.
        assert!((bell_diag_concurrence(-0.45, -0.225).unwrap() - 0.0625).abs() < 1e-12);
        assert!((bell_diag_concurrence_closed(-0.45, -0.225) - 0.1125).abs() < 1e-12);
        for (t1, t3) in [(-0.3, -0.15), (-0.1, 0.2), (0.2, 0.1)] {
            let a = bell_diag_concurrence(t1, t3).unwrap();
            assert!((bell_diag_concurrence_closed(t1, t3) - a).abs() < 1e-12);
        }
    }

    #[test]
    fn conditional_entropy_of_bell_along_z() {
        let bell = bell_x().to_density();
        assert!(measured_conditional_entropy(&bell, 0.0, 0.0).abs() < 1e-12);
        assert!(measured_conditional_entropy(&bell, 1.1, 2.3).abs() < 1e-12);
        let mixed = DensityOperator::maximally_mixed(4);
        assert!((measured_conditional_entropy(&mixed, 0.4, 0.1) - 1.0).abs() < 1e-12);
    }
}
