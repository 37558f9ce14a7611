//! Small dense complex-matrix substrate: construction, tensor products,
//! partial trace, partial transpose, Hermitian eigenvalues, determinants.
//!
//! Two-qubit basis order is fixed globally as |00>, |01>, |10>, |11>:
//! a composite index is `2*m + mu` where `m` is the first (slowest) qubit
//! and `mu` the second. Every module in this crate relies on this ordering;
//! it is defined here and nowhere else.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything here is safe for concurrent read-only use.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen_unchecked, hermitian_eigenvalues_unchecked, JACOBI_TOL};
pub use matrix::{
    partial_trace, partial_transpose, reduced_from_pure, tensor, tensor_vec, ComplexMatrix,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance for [`DensityMatrix`] construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Hermiticity tolerance accepted by [`hermitian_eigenvalues`].
pub const EIGEN_HERMITICITY_TOL: f64 = 1e-10;

/// Ascending real eigenvalues of a Hermitian matrix.
///
/// Fails if the input deviates from Hermiticity by more than 1e-10 in any
/// entry. The returned eigenvalues sum to the trace to solver precision.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let deviation = m.hermiticity_deviation();
    if deviation > EIGEN_HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: EIGEN_HERMITICITY_TOL,
        });
    }
    Ok(hermitian_eigenvalues_unchecked(m))
}

/// A Hermitian matrix recorded together with its trace deviation and its
/// minimum eigenvalue.
///
/// Construction never renormalizes and never rejects indefinite or
/// wrongly-traced input: the closed-form expressions this crate evaluates
/// can produce both, and the point is to surface that, not hide it.
/// Positivity is a queryable status, not an assumption.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    trace_deviation: f64,
    min_eigenvalue: f64,
}

impl DensityMatrix {
    /// Wraps a Hermitian matrix, recording `trace - 1` and the minimum
    /// eigenvalue. Fails if any entry deviates from Hermiticity by more
    /// than 1e-12.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        let trace_deviation = matrix.trace().re - 1.0;
        let min_eigenvalue = hermitian_eigenvalues_unchecked(&matrix)[0];
        Ok(Self {
            matrix,
            trace_deviation,
            min_eigenvalue,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    /// Signed deviation of the trace from 1.
    pub fn trace_deviation(&self) -> f64 {
        self.trace_deviation
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// Whether the matrix is positive semidefinite within `-tol`.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.min_eigenvalue >= -tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_phi_plus() -> ComplexMatrix {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::outer(&[c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)])
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let vals = hermitian_eigenvalues(&ComplexMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(vals.len(), 3);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_bell_partial_transpose() {
        let pt = partial_transpose(&bell_phi_plus()).unwrap();
        let vals = hermitian_eigenvalues(&pt).unwrap();
        assert!((vals[0] + 0.5).abs() < 1e-12);
        for v in &vals[1..] {
            assert!((v - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn density_matrix_records_trace_deviation_without_renormalizing() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[1.0, 1.0])).unwrap();
        assert!((rho.trace_deviation() - 1.0).abs() < 1e-15);
        assert!((rho.entry(0, 0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_reports_indefiniteness() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[1.2, -0.2])).unwrap();
        assert!(!rho.is_positive_semidefinite(1e-10));
        assert!((rho.min_eigenvalue() + 0.2).abs() < 1e-13);
    }

    #[test]
    fn density_matrix_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 1, c(1e-6, 0.0));
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }
}
