//! Dense complex Hermitian linear algebra, density matrices and exact unitary evolution.

mod eigen;
mod evolve;
mod matrix;
mod state;

pub use eigen::{spectral_decompose, SpectralDecomposition};
pub use evolve::{evolve_unitary, evolve_unitary_with, propagate_in_eigenbasis};
pub(crate) use evolve::{apply_factor_matrix, check_dims};
pub use matrix::ComplexMatrix;
pub use state::{DensityMatrix, HermitianGenerator};
