//! Seeded random states and unitaries for property checks and benchmarks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cloners::MachineCoefficients;
use crate::linalg::{tensor, ComplexMatrix, DensityOperator, PureState};
use crate::states::{PureSchmidtState, XState};

/// Deterministic generator for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng))
}

/// Haar-random pure state.
pub fn random_pure(rng: &mut impl Rng, dim: usize) -> PureState {
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        if let Ok(psi) = PureState::normalized(amps) {
            return psi;
        }
    }
}

/// Hilbert–Schmidt random mixed state `G G† / tr(G G†)`.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    let g = ginibre(rng, dim);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let m = m.scale(1.0 / tr);
    // Exact Hermitian symmetrization; the product is Hermitian up to roundoff.
    let m = (&m + &m.adjoint()).scale(0.5);
    DensityOperator::new(m).expect("G G^dagger is a valid density matrix")
}

/// Haar-random unitary from Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g[(i, j)]).collect();
        for q in &cols {
            let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= overlap * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// `U_A ⊗ U_B` with independent Haar-random qubit unitaries.
pub fn random_local_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let a = random_unitary(rng, 2);
    let b = random_unitary(rng, 2);
    tensor(&a, &b)
}

/// Schmidt state with `α²` uniform on `[0, 1]`.
pub fn random_schmidt(rng: &mut impl Rng) -> PureSchmidtState {
    PureSchmidtState::from_alpha_sq(rng.random::<f64>()).expect("alpha^2 in [0, 1]")
}

/// Random X-state with real coherences of either sign.
///
/// Diagonals come from a flat Dirichlet draw; each coherence is a uniform
/// fraction of its positivity bound. About one draw in eight zeroes one of
/// the diagonal entries so boundary cases get exercised.
pub fn random_x_state(rng: &mut impl Rng) -> XState {
    let mut d: [f64; 4] = std::array::from_fn(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln());
    if rng.random::<f64>() < 0.125 {
        d[rng.random_range(0..4)] = 0.0;
    }
    let total: f64 = d.iter().sum();
    let d = d.map(|v| v / total);
    let mut coherence = |p: f64, q: f64| {
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        sign * rng.random::<f64>() * (p * q).sqrt()
    };
    let rho14 = coherence(d[0], d[3]);
    let rho23 = coherence(d[1], d[2]);
    XState::new(d[0], d[1], d[2], d[3], rho14, rho23).expect("coherences within positivity bounds")
}

/// Random coefficients with `c = 0` and `μ = 4`.
pub fn random_coefficients(rng: &mut impl Rng) -> MachineCoefficients {
    MachineCoefficients::from_a_sq(rng.random::<f64>(), 4.0).expect("a^2 in [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let a = random_density(&mut rng(7), 4);
        let b = random_density(&mut rng(7), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary(&mut rng(1), 4);
        assert!((&u * &u.adjoint()).approx_eq(&ComplexMatrix::identity(4), 1e-12));
    }

    #[test]
    fn x_states_valid() {
        let mut r = rng(3);
        for _ in 0..200 {
            let x = random_x_state(&mut r);
            assert!(DensityOperator::new(x.to_matrix()).is_ok());
        }
    }
}
