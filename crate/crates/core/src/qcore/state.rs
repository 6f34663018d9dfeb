use num_complex::Complex;

use super::eigen::jacobi_eigh;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A Hermitian generator `H/ħ` in rad/s.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGenerator<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> HermitianGenerator<T> {
    /// Accepts `matrix` if it equals its adjoint to within `1e-12` of its largest entry.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let (defect, row, col) = matrix.hermiticity_defect();
        let scale = matrix.max_abs();
        if defect > T::tol(1e-12) * scale {
            return Err(Error::NotHermitian { row, col, deviation: defect.as_f64() });
        }
        Ok(Self { matrix: matrix.hermitian_part() })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The generator multiplied by a real factor, e.g. a mean Rabi frequency.
    pub fn scaled(&self, factor: T) -> Self {
        Self { matrix: self.matrix.scale_real(factor) }
    }
}

/// A Hermitian, unit-trace, positive semidefinite state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let (defect, row, col) = matrix.hermiticity_defect();
        if defect > T::tol(1e-12) {
            return Err(Error::NotDensityMatrix(format!(
                "not Hermitian at ({row}, {col}), deviation {defect:e}"
            )));
        }
        let trace = matrix.trace();
        if (trace - Complex::new(T::one(), T::zero())).norm() > T::tol(1e-12) {
            return Err(Error::NotDensityMatrix(format!("trace is {trace}, expected 1")));
        }
        let rho = Self { matrix: matrix.hermitian_part() };
        let min_eig = rho.min_eigenvalue()?;
        if min_eig < -T::tol(1e-10) {
            return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(rho)
    }

    /// Pure basis state `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidParameter(format!("basis index {k} out of range for dim {dim}")));
        }
        Ok(Self { matrix: ComplexMatrix::basis_projector(dim, k) })
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) state vector.
    pub fn from_state_vector(psi: &[Complex<T>]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if psi.is_empty() || !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::InvalidParameter("state vector has zero or non-finite norm".into()));
        }
        let n = psi.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj() / (norm * norm);
            }
        }
        Ok(Self { matrix: m })
    }

    /// Wraps a matrix produced by a trace- and positivity-preserving map.
    pub(crate) fn from_map_output(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix: matrix.hermitian_part() }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `⟨k|ρ|k⟩`.
    pub fn population(&self, k: usize) -> T {
        self.matrix[(k, k)].re
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(jacobi_eigh(&self.matrix)?.eigenvalues().to_vec())
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or_else(T::zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_rejects_non_hermitian_and_names_entry() {
        let m = ComplexMatrix::from_rows(&[
            vec![(1.0, 0.0), (2.0, 0.0), (0.0, 0.0)],
            vec![(2.0, 0.0), (0.0, 0.0), (0.5, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        ])
        .unwrap();
        match HermitianGenerator::new(m).unwrap_err() {
            Error::NotHermitian { row, col, .. } => assert_eq!((row, col), (1, 2)),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn generator_tolerance_is_relative() {
        let big = 1e5;
        let m = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (big, 1e-8)],
            vec![(big, 0.0), (0.0, 0.0)],
        ])
        .unwrap();
        assert!(HermitianGenerator::new(m).is_ok());
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::<f64>::basis_state(3, 1).is_ok());
        let not_unit = ComplexMatrix::from_diagonal(&[0.5, 0.4]);
        assert!(DensityMatrix::new(not_unit).is_err());
        let negative = ComplexMatrix::from_diagonal(&[1.2, -0.2]);
        assert!(DensityMatrix::new(negative).is_err());
        let plus = DensityMatrix::from_state_vector(&[Complex::new(1.0f64, 0.0), Complex::new(1.0, 0.0)]).unwrap();
        assert!((plus.matrix()[(0, 1)].re - 0.5).abs() < 1e-15);
        assert!(DensityMatrix::new(plus.matrix().clone()).is_ok());
    }
}
