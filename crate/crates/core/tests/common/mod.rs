#![allow(dead_code)]

use nondiss::qcore::{ComplexMatrix, DensityMatrix, HermitianGenerator};
use num_complex::Complex;
use rand::Rng;

/// Hermitian matrix with entries of order `scale`.
pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> HermitianGenerator<f64> {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex::new(scale * rng.random_range(-1.0..1.0), 0.0);
        for j in (i + 1)..dim {
            let z = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianGenerator::new(m).unwrap()
}

/// Full-rank mixed state `AA†/tr(AA†)`.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize) -> DensityMatrix<f64> {
    let mut a = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            a[(i, j)] = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    let aa = &a * &a.adjoint();
    let tr = aa.trace().re;
    DensityMatrix::new(aa.scale_real(1.0 / tr)).unwrap()
}

/// A random pure state.
pub fn random_pure<R: Rng>(rng: &mut R, dim: usize) -> DensityMatrix<f64> {
    let psi: Vec<Complex<f64>> =
        (0..dim).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    DensityMatrix::from_state_vector(&psi).unwrap()
}

/// `0, t_max/(n-1), …, t_max`.
pub fn grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}
