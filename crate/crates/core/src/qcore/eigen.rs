//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! a real symmetric Jacobi rotation, so the working matrix stays Hermitian and
//! the accumulated transform stays unitary. Sweeps repeat until the
//! off-diagonal Frobenius norm drops below `1e-14` of the full norm.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use super::state::HermitianGenerator;
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending, rad/s) and unitary eigenvector matrix (columns) of a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T: Real> {
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Bohr frequency `ω_mn = λ_m - λ_n`, the Liouvillian eigenvalue on `|m⟩⟨n|`.
    pub fn bohr_frequency(&self, m: usize, n: usize) -> T {
        self.eigenvalues[m] - self.eigenvalues[n]
    }

    /// Largest Bohr frequency magnitude.
    pub fn max_bohr_frequency(&self) -> T {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(&lo), Some(&hi)) => hi - lo,
            _ => T::zero(),
        }
    }

    /// `U diag(λ) U†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_diagonal(&self.eigenvalues).conjugate_by_adjoint(&self.eigenvectors)
    }

    /// Expresses an operator in the eigenbasis: `U† A U`.
    pub fn to_eigenbasis(&self, a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        a.conjugate_by(&self.eigenvectors)
    }

    /// Maps an eigenbasis operator back: `U A U†`.
    pub fn from_eigenbasis(&self, a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        a.conjugate_by_adjoint(&self.eigenvectors)
    }
}

/// Diagonalizes a Hermitian generator.
pub fn spectral_decompose<T: Real>(g: &HermitianGenerator<T>) -> Result<SpectralDecomposition<T>> {
    jacobi_eigh(g.matrix())
}

/// Jacobi diagonalization of a matrix already known to be Hermitian.
pub(crate) fn jacobi_eigh<T: Real>(input: &ComplexMatrix<T>) -> Result<SpectralDecomposition<T>> {
    let n = input.dim();
    let mut a = input.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);

    let total = a.frobenius_norm();
    let threshold = T::tol(1e-14) * total;
    let mut converged = total.is_zero();

    for _ in 0..MAX_SWEEPS {
        if converged || off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off > threshold {
            return Err(Error::EigenNotConverged { sweeps: MAX_SWEEPS, off_norm: off.as_f64() });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));

    let eigenvalues: Vec<T> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    let cutoff = T::tol(1e-10);
    for (col, &k) in order.iter().enumerate() {
        // fix the global phase: first non-negligible component real-positive
        let phase = (0..n)
            .map(|row| v[(row, k)])
            .find(|z| z.norm() > cutoff)
            .map(|z| z.conj() / z.norm())
            .unwrap_or_else(|| real(T::one()));
        for row in 0..n {
            eigenvectors[(row, col)] = v[(row, k)] * phase;
        }
    }

    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies `A <- J† A J`, `V <- V J` with `J` chosen to annihilate `a_pq`.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b.is_zero() {
        return;
    }
    let e = apq / b;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (T::lit(2.0) * b);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let sgn = if theta < T::zero() { -T::one() } else { T::one() };
        sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // J restricted to (p, q) = [[c, s e], [-s ē, c]]
    let j_pq: Complex<T> = e * s;
    let j_qp: Complex<T> = -(e.conj() * s);
    let n = a.dim();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * j_qp.conj();
        a[(q, k)] = apk * j_pq.conj() + aqk * c;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = real(a[(p, p)].re);
    a[(q, q)] = real(a[(q, q)].re);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * c;
    }
}
