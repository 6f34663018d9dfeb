//! Non-dissipative decoherence of Rabi oscillations.
//!
//! Unitary evolution averaged over a Gamma-distributed evolution time `t'`
//! (mean `t`, variance `tτ`) gives the propagator `V(t) = (1 + iLτ)^{-t/τ}`,
//! which damps coherences in the energy basis while conserving populations.
//! The crate provides:
//!
//! * [`qcore`]: Hermitian generators (`H/ħ` in rad/s), density matrices, a
//!   Jacobi eigensolver and exact unitary evolution;
//! * [`averaging`]: the Gamma kernel, closed-form and Monte-Carlo averaged
//!   propagators, the generalized and second-order phase-destroying master
//!   equations, and the pulse-area variant;
//! * [`models`]: Jaynes–Cummings vacuum Rabi oscillations and trapped-ion
//!   blue-sideband doublets;
//! * [`analysis`]: damped-cosine and power-law fits and τ estimators.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which is what the acceptance tolerances assume.

pub mod analysis;
pub mod averaging;
mod error;
pub mod models;
pub mod qcore;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ComplexMatrix64 = qcore::ComplexMatrix<f64>;
pub type HermitianGenerator64 = qcore::HermitianGenerator<f64>;
pub type DensityMatrix64 = qcore::DensityMatrix<f64>;
pub type SpectralDecomposition64 = qcore::SpectralDecomposition<f64>;
pub type GammaTimeLaw64 = averaging::GammaTimeLaw<f64>;
pub type PulseAreaLaw64 = averaging::PulseAreaLaw<f64>;
pub type Trajectory64 = averaging::Trajectory<f64>;
pub type CavityQedParams64 = models::CavityQedParams<f64>;
pub type IonTrapParams64 = models::IonTrapParams<f64>;
pub type DoubletModel64 = models::DoubletModel<f64>;
pub type TimeSeries64 = analysis::TimeSeries<f64>;
pub type DampedCosineFit64 = analysis::DampedCosineFit<f64>;
pub type PowerLawFit64 = analysis::PowerLawFit<f64>;

pub type ComplexMatrix32 = qcore::ComplexMatrix<f32>;
pub type HermitianGenerator32 = qcore::HermitianGenerator<f32>;
pub type DensityMatrix32 = qcore::DensityMatrix<f32>;
pub type GammaTimeLaw32 = averaging::GammaTimeLaw<f32>;
