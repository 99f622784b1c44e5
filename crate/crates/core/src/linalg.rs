//! Dense complex linear algebra for small composite quantum systems.
//!
//! Everything here works on dense row-major matrices. The largest space used
//! by the crate is the 64-dimensional output of the two-sided cloner
//! simulation, so no sparse structure is exploited.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for matrix comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Tolerance on Hermiticity, trace and positivity of density operators.
pub const DENSITY_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense complex matrix stored in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |i, j| if i == j { ONE } else { ZERO })
    }

    /// Square matrix with the given real diagonal.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(diag[i], 0.0) } else { ZERO })
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Largest absolute entrywise difference; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dims() != other.dims() {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// `‖m − m†‖_max`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions do not match");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dims(), rhs.dims(), "shapes do not match");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dims(), rhs.dims(), "shapes do not match");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrix by index: 0 = identity, 1 = σ₁ (X), 2 = σ₂ (Y), 3 = σ₃ (Z).
pub fn pauli(k: usize) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let data = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -i, i, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index must be in 0..4, got {k}"),
    };
    ComplexMatrix { rows: 2, cols: 2, data: data.to_vec() }
}

/// Two-qubit Pauli product σ_i ⊗ σ_j (indices as in [`pauli`]).
pub fn pauli_pair(i: usize, j: usize) -> ComplexMatrix {
    tensor(&pauli(i), &pauli(j))
}

/// Kronecker product: entry `(i·b.rows + j, k·b.cols + l)` is `a[i,k]·b[j,l]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..a.rows {
        for j in 0..b.rows {
            for k in 0..a.cols {
                let x = a[(i, k)];
                for l in 0..b.cols {
                    data.push(x * b[(j, l)]);
                }
            }
        }
    }
    ComplexMatrix { rows, cols, data }
}

/// Kronecker product of two vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Hermitian eigendecomposition. Eigenvalues are returned in descending
/// order; column `k` of the returned matrix is the eigenvector of the
/// `k`-th eigenvalue.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let deviation = m.hermitian_deviation();
    if deviation > DENSITY_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows;
    let sym = m.to_nalgebra();
    let sym = (&sym + sym.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Eigenvalues only, descending.
pub fn eigvals_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eig_hermitian(m).map(|(values, _)| values)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues within roundoff of zero are clamped.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = eig_hermitian(m)?;
    let n = m.rows;
    let roots: Vec<f64> = values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| vectors[(i, k)] * roots[k] * vectors[(j, k)].conj()).sum()))
}

/// A validated density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates `matrix` against the density-operator invariants
    /// (tolerance [`DENSITY_TOLERANCE`]).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!(
                "density operator must be square, got {}x{}",
                matrix.rows, matrix.cols
            )));
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > DENSITY_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOLERANCE || trace.im.abs() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace is {:.12}{:+.3e}i, expected 1", trace.re, trace.im)));
        }
        let min = eigvals_hermitian(&matrix)?.last().copied().unwrap_or(0.0);
        if min < -DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("smallest eigenvalue {min:.3e} is negative")));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix that is a density operator by construction.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self { matrix: ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()) }
    }

    /// The maximally mixed state I/dim.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Conjugation U ρ U†.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dims() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "conjugating a {}-dim state by a {}x{} matrix",
                self.dim(),
                u.rows,
                u.cols
            )));
        }
        Ok(Self { matrix: &(u * &self.matrix) * &u.adjoint() })
    }

    /// Descending eigenvalues, with roundoff negatives clamped to zero.
    pub fn spectrum(&self) -> Vec<f64> {
        eigvals_hermitian(&self.matrix)
            .expect("density operators are Hermitian")
            .into_iter()
            .map(|l| l.max(0.0))
            .collect()
    }
}

impl fmt::Debug for DensityOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityOperator({:?})", self.matrix)
    }
}

/// A normalized state vector.
#[derive(Clone, PartialEq, Debug)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch("empty state vector".into()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > DEFAULT_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_amplitudes_unchecked(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    /// Computational basis state |k⟩ in a `dim`-dimensional space.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> DensityOperator {
        DensityOperator::from_pure(self)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        Self { amplitudes: tensor_vec(&self.amplitudes, &other.amplitudes) }
    }
}

/// Strides of each subsystem in a row-major composite index (subsystem 0 is
/// the most significant digit).
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    strides
}

/// Offsets of every joint index of `subset`, enumerated row-major.
fn subset_offsets(subset: &[usize], dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0];
    for &s in subset {
        offsets = offsets.iter().flat_map(|&o| (0..dims[s]).map(move |d| o + d * strides[s])).collect();
    }
    offsets
}

/// Partial trace of a square matrix over every subsystem not in `keep`.
/// Kept subsystems appear in ascending index order in the result.
pub fn partial_trace_matrix(m: &ComplexMatrix, subsystem_dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    if subsystem_dims.is_empty() || subsystem_dims.contains(&0) {
        return Err(Error::DimensionMismatch(
            "subsystem dimensions must be a nonempty list of positive integers".into(),
        ));
    }
    let total: usize = subsystem_dims.iter().product();
    if !m.is_square() || m.rows != total {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {subsystem_dims:?} multiply to {total}, matrix is {}x{}",
            m.rows, m.cols
        )));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() {
        return Err(Error::DimensionMismatch("at least one subsystem must be kept".into()));
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= subsystem_dims.len()) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem index {bad} out of range for {} subsystems",
            subsystem_dims.len()
        )));
    }
    let traced: Vec<usize> = (0..subsystem_dims.len()).filter(|k| !kept.contains(k)).collect();
    let strides = strides(subsystem_dims);
    let kept_offsets = subset_offsets(&kept, subsystem_dims, &strides);
    let traced_offsets = subset_offsets(&traced, subsystem_dims, &strides);

    let n = kept_offsets.len();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        traced_offsets.iter().map(|&t| m[(kept_offsets[r] + t, kept_offsets[c] + t)]).sum()
    }))
}

/// Reduced density operator on the subsystems listed in `keep`.
pub fn partial_trace(rho: &DensityOperator, subsystem_dims: &[usize], keep: &[usize]) -> Result<DensityOperator> {
    partial_trace_matrix(rho.matrix(), subsystem_dims, keep).map(DensityOperator::from_matrix_unchecked)
}

/// Shannon entropy in bits of a probability vector, with `0·log 0 = 0`.
///
/// Entries in `[-1e-10, 0)` are treated as roundoff and clamped; anything
/// more negative is rejected.
pub fn shannon_entropy_bits(probabilities: &[f64]) -> Result<f64> {
    let mut h = 0.0;
    for &p in probabilities {
        if p < -DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("negative probability {p:.3e}")));
        }
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    Ok(h.max(0.0))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    let values = eigvals_hermitian(rho.matrix()).expect("density operators are Hermitian");
    shannon_entropy_bits(&values).expect("density operators are positive semidefinite")
}

/// ⟨ψ|ρ|ψ⟩, clamped to `[0, 1]`.
pub fn fidelity_pure(psi: &PureState, rho: &DensityOperator) -> Result<f64> {
    if psi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}-dim state against {}-dim density operator",
            psi.dim(),
            rho.dim()
        )));
    }
    let rho_psi = rho.matrix().apply(psi.amplitudes());
    let overlap: Complex64 = psi.amplitudes().iter().zip(&rho_psi).map(|(a, b)| a.conj() * b).sum();
    Ok(overlap.re.clamp(0.0, 1.0))
}

/// Uhlmann fidelity `(tr √(√ρ σ √ρ))²`, clamped to `[0, 1]`.
pub fn uhlmann_fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}-dim against {}-dim density operator",
            rho.dim(),
            sigma.dim()
        )));
    }
    let root = sqrt_psd(rho.matrix())?;
    let inner = &(&root * sigma.matrix()) * &root;
    let inner = (&inner + &inner.adjoint()).scale(0.5);
    let trace: f64 = eigvals_hermitian(&inner)?.iter().map(|l| l.max(0.0).sqrt()).sum();
    Ok((trace * trace).clamp(0.0, 1.0))
}
