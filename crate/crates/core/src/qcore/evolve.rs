use num_complex::Complex;

use super::eigen::{spectral_decompose, SpectralDecomposition};
use super::matrix::ComplexMatrix;
use super::state::{DensityMatrix, HermitianGenerator};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `e^{-iGt} ρ0 e^{+iGt}`, evaluated in the eigenbasis of `g`.
pub fn evolve_unitary<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    t: T,
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, g.dim())?;
    if t < T::zero() || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("evolution time must be finite and >= 0, got {t}")));
    }
    if t.is_zero() {
        return Ok(rho0.clone());
    }
    let decomposition = spectral_decompose(g)?;
    evolve_unitary_with(&decomposition, rho0, t)
}

/// Same as [`evolve_unitary`] with a precomputed decomposition.
pub fn evolve_unitary_with<T: Real>(
    decomposition: &SpectralDecomposition<T>,
    rho0: &DensityMatrix<T>,
    t: T,
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, decomposition.dim())?;
    if t.is_zero() {
        return Ok(rho0.clone());
    }
    Ok(propagate_in_eigenbasis(decomposition, rho0, |omega| Complex::from_polar(T::one(), -omega * t)))
}

/// Multiplies each eigenbasis coherence `ρ_mn` by `factor(ω_mn)` and transforms back.
///
/// Every propagator in the crate that is diagonal in the Liouvillian eigenbasis
/// goes through here. `factor` must map `ω` and `-ω` to complex conjugates and
/// `0` to `1` for the output to remain a density matrix.
pub fn propagate_in_eigenbasis<T: Real, F>(
    decomposition: &SpectralDecomposition<T>,
    rho0: &DensityMatrix<T>,
    factor: F,
) -> DensityMatrix<T>
where
    F: Fn(T) -> Complex<T>,
{
    let mut rho = decomposition.to_eigenbasis(rho0.matrix());
    let n = rho.dim();
    for m in 0..n {
        for k in 0..n {
            if m != k {
                rho[(m, k)] = rho[(m, k)] * factor(decomposition.bohr_frequency(m, k));
            }
        }
    }
    DensityMatrix::from_map_output(decomposition.from_eigenbasis(&rho))
}

/// Applies a precomputed eigenbasis factor matrix `F` entrywise: `U (F ∘ U†ρU) U†`.
pub(crate) fn apply_factor_matrix<T: Real>(
    decomposition: &SpectralDecomposition<T>,
    rho0: &DensityMatrix<T>,
    factors: &ComplexMatrix<T>,
) -> DensityMatrix<T> {
    let rho = decomposition.to_eigenbasis(rho0.matrix()).hadamard(factors);
    DensityMatrix::from_map_output(decomposition.from_eigenbasis(&rho))
}

pub(crate) fn check_dims<T: Real>(rho: &DensityMatrix<T>, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rho.dim() });
    }
    Ok(())
}
