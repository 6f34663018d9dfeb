//! Jaynes–Cummings model of a two-level atom resonant with a truncated cavity mode.

use num_complex::Complex;

use super::doublet::DoubletModel;
use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, HermitianGenerator};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityQedParams<T: Real> {
    /// Ω_R, rad/s
    pub omega_r: T,
    /// highest photon number kept
    pub n_max: usize,
}

impl<T: Real> CavityQedParams<T> {
    pub fn new(omega_r: T, n_max: usize) -> Result<Self> {
        if !(omega_r > T::zero()) || !omega_r.is_finite() {
            return Err(Error::InvalidParameter(format!("omega_r must be > 0, got {omega_r}")));
        }
        if n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be >= 1".into()));
        }
        Ok(Self { omega_r, n_max })
    }

    pub fn dim(&self) -> usize {
        2 * (self.n_max + 1)
    }
}

/// Basis index of `|e,n⟩`.
pub fn excited_index(n: usize) -> usize {
    2 * n
}

/// Basis index of `|g,n⟩`.
pub fn ground_index(n: usize) -> usize {
    2 * n + 1
}

/// `Ω_R (|e⟩⟨g| a + |g⟩⟨e| a†)` on `{|e,n⟩, |g,n⟩}`, ordered `|e,0⟩, |g,0⟩, |e,1⟩, |g,1⟩, …`.
pub fn jc_hamiltonian<T: Real>(p: &CavityQedParams<T>) -> HermitianGenerator<T> {
    let mut m = ComplexMatrix::zeros(p.dim());
    for n in 0..p.n_max {
        let coupling = Complex::new(p.omega_r * T::from_count(n + 1).sqrt(), T::zero());
        let (e, g) = (excited_index(n), ground_index(n + 1));
        m[(e, g)] = coupling;
        m[(g, e)] = coupling;
    }
    HermitianGenerator::new(m).expect("real symmetric coupling")
}

/// The `{|e,0⟩, |g,1⟩}` block as a doublet.
pub fn vacuum_doublet<T: Real>(omega_r: T) -> Result<DoubletModel<T>> {
    DoubletModel::new(omega_r, ("|e,0>", "|g,1>"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::spectral_decompose;

    #[test]
    fn vacuum_block_is_sigma_x() {
        let w = 3.0;
        let h = jc_hamiltonian(&CavityQedParams::new(w, 1).unwrap());
        let m = h.matrix();
        assert_eq!(m[(excited_index(0), ground_index(1))], Complex::new(w, 0.0));
        assert_eq!(m[(ground_index(1), excited_index(0))], Complex::new(w, 0.0));
        assert_eq!(m[(excited_index(0), excited_index(0))], Complex::new(0.0, 0.0));
        assert_eq!(m[(ground_index(1), ground_index(1))], Complex::new(0.0, 0.0));
    }

    #[test]
    fn dressed_state_spectrum() {
        let w = 2.0;
        let n_max = 5;
        let h = jc_hamiltonian(&CavityQedParams::new(w, n_max).unwrap());
        let d = spectral_decompose(&h).unwrap();
        // sectors n = 0..n_max-1 give ±Ω√(n+1); |g,0⟩ and the truncated |e,n_max⟩ give 0
        let mut expected: Vec<f64> = (0..n_max).flat_map(|n| {
            let s = w * ((n + 1) as f64).sqrt();
            [s, -s]
        }).collect();
        expected.extend([0.0, 0.0]);
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in d.eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn ground_state_is_null_vector() {
        let h = jc_hamiltonian(&CavityQedParams::new(1.7, 3).unwrap());
        let m = h.matrix();
        let g0 = ground_index(0);
        for i in 0..m.dim() {
            assert_eq!(m[(i, g0)], Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn invalid_params() {
        assert!(CavityQedParams::new(0.0, 1).is_err());
        assert!(CavityQedParams::new(1.0, 0).is_err());
    }
}
