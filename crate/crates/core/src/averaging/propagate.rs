//! Averaged propagator `V(t) = (1 + iLτ)^{-t/τ}` and its Monte-Carlo counterpart.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use super::kernel::{GammaTimeLaw, PulseAreaLaw};
use super::sampling::{chunk_rng, GammaSampler, MC_CHUNK};
use crate::error::{Error, Result};
use crate::qcore::{
    apply_factor_matrix, check_dims, propagate_in_eigenbasis, spectral_decompose, ComplexMatrix,
    DensityMatrix, HermitianGenerator, SpectralDecomposition,
};
use crate::scalar::{real, Real};

/// Eigenvalue of `V(t)` on a coherence with Bohr frequency `ω`:
/// `exp(-(t/τ)[½ ln(1+ω²τ²) + i atan(ωτ)])`, the principal branch of `(1+iωτ)^{-t/τ}`.
pub fn averaging_factor<T: Real>(omega: T, law: &GammaTimeLaw<T>) -> Complex<T> {
    log_generator_step(omega, law.tau(), law.t())
}

/// `exp(-(dt/τ) ln(1 + iωτ))`.
pub(crate) fn log_generator_step<T: Real>(omega: T, tau: T, dt: T) -> Complex<T> {
    if dt.is_zero() {
        return real(T::one());
    }
    let x = omega * tau;
    let shape = dt / tau;
    let modulus = (-shape * T::lit(0.5) * (x * x).ln_1p()).exp();
    Complex::from_polar(modulus, -shape * x.atan())
}

/// `ρ̄(t) = V(t) ρ0`, exact in the eigenbasis of `g`.
pub fn averaged_propagate<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    law: &GammaTimeLaw<T>,
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, g.dim())?;
    if law.t().is_zero() {
        return Ok(rho0.clone());
    }
    let decomposition = spectral_decompose(g)?;
    averaged_propagate_with(&decomposition, rho0, law)
}

/// [`averaged_propagate`] with a precomputed decomposition.
pub fn averaged_propagate_with<T: Real>(
    decomposition: &SpectralDecomposition<T>,
    rho0: &DensityMatrix<T>,
    law: &GammaTimeLaw<T>,
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, decomposition.dim())?;
    if law.t().is_zero() {
        return Ok(rho0.clone());
    }
    Ok(propagate_in_eigenbasis(decomposition, rho0, |w| averaging_factor(w, law)))
}

/// Pulse-area averaging: `V(t) = (1 + iL̃Ωτ)^{-t/τ}` for the unit-strength generator `g_tilde`.
pub fn area_averaged_propagate<T: Real>(
    rho0: &DensityMatrix<T>,
    g_tilde: &HermitianGenerator<T>,
    law: &PulseAreaLaw<T>,
) -> Result<DensityMatrix<T>> {
    averaged_propagate(rho0, &g_tilde.scaled(law.omega()), &law.time_law())
}

/// Arithmetic mean of `e^{-iGt_k} ρ0 e^{iGt_k}` over explicit evolution times.
pub fn average_over_times<T: Real>(
    decomposition: &SpectralDecomposition<T>,
    rho0: &DensityMatrix<T>,
    times: &[T],
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, decomposition.dim())?;
    if times.is_empty() {
        return Err(Error::InvalidParameter("at least one evolution time is required".into()));
    }
    let mut acc = PhaseAccumulator::new(decomposition);
    for &t in times {
        acc.add(t);
    }
    Ok(acc.finish(decomposition, rho0, times.len()))
}

/// Monte-Carlo estimate of `ρ̄(t)`: the mean of unitary evolutions over `n_samples`
/// Gamma-distributed times.
///
/// Draws come in chunks of [`MC_CHUNK`]; chunk `c` uses stream `c` of the
/// ChaCha generator seeded with `seed`. Chunks run in parallel and their partial
/// sums are added in chunk order, so the result does not depend on thread count
/// and equals [`averaged_propagate_mc_serial`] bit for bit.
pub fn averaged_propagate_mc<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    law: &GammaTimeLaw<T>,
    n_samples: usize,
    seed: u64,
) -> Result<DensityMatrix<T>> {
    mc_impl(rho0, g, law, n_samples, seed, true)
}

/// Single-threaded [`averaged_propagate_mc`].
pub fn averaged_propagate_mc_serial<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    law: &GammaTimeLaw<T>,
    n_samples: usize,
    seed: u64,
) -> Result<DensityMatrix<T>> {
    mc_impl(rho0, g, law, n_samples, seed, false)
}

fn mc_impl<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    law: &GammaTimeLaw<T>,
    n_samples: usize,
    seed: u64,
    parallel: bool,
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, g.dim())?;
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be >= 1".into()));
    }
    if law.t().is_zero() {
        return Ok(rho0.clone());
    }
    let decomposition = spectral_decompose(g)?;
    averaged_propagate_mc_with(&decomposition, rho0, law, n_samples, seed, parallel)
}

/// Monte-Carlo averaging with a precomputed decomposition.
pub fn averaged_propagate_mc_with<T: Real>(
    decomposition: &SpectralDecomposition<T>,
    rho0: &DensityMatrix<T>,
    law: &GammaTimeLaw<T>,
    n_samples: usize,
    seed: u64,
    parallel: bool,
) -> Result<DensityMatrix<T>> {
    check_dims(rho0, decomposition.dim())?;
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be >= 1".into()));
    }
    if law.t().is_zero() {
        return Ok(rho0.clone());
    }
    let sampler = GammaSampler::for_law(law)?;
    let chunks = n_samples.div_ceil(MC_CHUNK);
    let run_chunk = |c: usize| {
        let mut rng = chunk_rng(seed, c);
        let count = MC_CHUNK.min(n_samples - c * MC_CHUNK);
        let mut acc = PhaseAccumulator::new(decomposition);
        for _ in 0..count {
            acc.add(T::lit(sampler.sample(&mut rng)));
        }
        acc
    };
    let partials: Vec<PhaseAccumulator<T>> = if parallel {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    } else {
        (0..chunks).map(run_chunk).collect()
    };
    let mut total = PhaseAccumulator::new(decomposition);
    for p in &partials {
        total.merge(p);
    }
    Ok(total.finish(decomposition, rho0, n_samples))
}

/// Running sums of `e^{-iω_mn t}` over the strictly upper eigenbasis triangle.
struct PhaseAccumulator<T: Real> {
    omegas: Vec<T>,
    sums: Vec<Complex<T>>,
}

impl<T: Real> PhaseAccumulator<T> {
    fn new(decomposition: &SpectralDecomposition<T>) -> Self {
        let n = decomposition.dim();
        let mut omegas = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for m in 0..n {
            for k in (m + 1)..n {
                omegas.push(decomposition.bohr_frequency(m, k));
            }
        }
        let sums = vec![Complex::zero(); omegas.len()];
        Self { omegas, sums }
    }

    fn add(&mut self, t: T) {
        for (s, &w) in self.sums.iter_mut().zip(&self.omegas) {
            let (sin, cos) = (w * t).sin_cos();
            *s = *s + Complex::new(cos, -sin);
        }
    }

    fn merge(&mut self, other: &Self) {
        for (s, o) in self.sums.iter_mut().zip(&other.sums) {
            *s = *s + o;
        }
    }

    fn finish(
        &self,
        decomposition: &SpectralDecomposition<T>,
        rho0: &DensityMatrix<T>,
        count: usize,
    ) -> DensityMatrix<T> {
        let n = decomposition.dim();
        let inv = T::one() / T::from_count(count);
        let mut factors = ComplexMatrix::identity(n);
        let mut idx = 0;
        for m in 0..n {
            for k in (m + 1)..n {
                let f = self.sums[idx] * inv;
                factors[(m, k)] = f;
                factors[(k, m)] = f.conj();
                idx += 1;
            }
        }
        apply_factor_matrix(decomposition, rho0, &factors)
    }
}
