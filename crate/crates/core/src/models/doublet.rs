use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, HermitianGenerator};
use crate::scalar::Real;

/// Two resonantly coupled levels with effective Rabi frequency `rabi` (rad/s).
///
/// Basis index 0 is the initially populated level (`|e,0⟩` in the cavity,
/// `|↓,n⟩` for the ion), index 1 its partner.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubletModel<T: Real> {
    rabi: T,
    labels: (String, String),
}

impl<T: Real> DoubletModel<T> {
    pub fn new(rabi: T, labels: (impl Into<String>, impl Into<String>)) -> Result<Self> {
        if !(rabi > T::zero()) || !rabi.is_finite() {
            return Err(Error::InvalidParameter(format!("doublet Rabi frequency must be > 0, got {rabi}")));
        }
        Ok(Self { rabi, labels: (labels.0.into(), labels.1.into()) })
    }

    pub fn rabi(&self) -> T {
        self.rabi
    }

    pub fn labels(&self) -> (&str, &str) {
        (&self.labels.0, &self.labels.1)
    }

    /// `rabi · σ_x`.
    pub fn generator(&self) -> HermitianGenerator<T> {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = num_complex::Complex::new(self.rabi, T::zero());
        m[(1, 0)] = num_complex::Complex::new(self.rabi, T::zero());
        HermitianGenerator::new(m).expect("σ_x is Hermitian")
    }
}
