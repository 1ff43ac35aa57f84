use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{QsimError, Result};
use crate::CMatrix;

/// Tolerance on `‖H − H†‖∞` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Largest entrywise modulus of `A − A†`.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    (a - a.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `UU† − I`.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let p = u * u.adjoint();
    let id = CMatrix::identity(u.nrows(), u.ncols());
    (p - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    unitary_deviation(u) <= tol
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if h.nrows() != h.ncols() {
        return Err(QsimError::DimensionMismatch { expected: h.nrows(), got: h.ncols() });
    }
    let dev = hermitian_deviation(h);
    if dev > HERMITIAN_TOL {
        return Err(QsimError::NotHermitian(dev));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), h.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// `exp(iHt)` for Hermitian `H` via eigendecomposition.
pub fn matrix_exponential(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let (values, vectors) = hermitian_eigen(h)?;
    let phases = DVector::from_iterator(values.len(), values.iter().map(|&l| Complex64::from_polar(1.0, l * t)));
    Ok(&vectors * CMatrix::from_diagonal(&phases) * vectors.adjoint())
}

/// Real square matrix from row-major entries.
pub fn real_matrix(dim: usize, rows: &[f64]) -> CMatrix {
    CMatrix::from_fn(dim, dim, |r, c| Complex64::new(rows[r * dim + c], 0.0))
}
