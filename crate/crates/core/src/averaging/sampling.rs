//! Seeded Gamma sampling of the random evolution time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use super::kernel::GammaTimeLaw;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Name of the generator and sampling algorithm, for run metadata.
pub const RNG_ALGORITHM: &str =
    "ChaCha20Rng (rand_chacha, seed_from_u64, stream = chunk index) + Marsaglia-Tsang gamma with U^(1/shape) boost for shape < 1";

/// Number of draws taken from each ChaCha stream in Monte-Carlo averaging.
pub const MC_CHUNK: usize = 4096;

/// Marsaglia–Tsang squeeze/rejection sampler for Gamma(shape, scale).
#[derive(Debug, Clone, Copy)]
pub struct GammaSampler {
    shape: f64,
    scale: f64,
    d: f64,
    c: f64,
    // 1/shape when the U^(1/shape) boost is active
    boost: Option<f64>,
}

impl GammaSampler {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite()) || !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gamma sampler needs positive finite shape and scale, got ({shape}, {scale})"
            )));
        }
        let (base, boost) = if shape < 1.0 { (shape + 1.0, Some(1.0 / shape)) } else { (shape, None) };
        let d = base - 1.0 / 3.0;
        Ok(Self { shape, scale, d, c: 1.0 / (9.0 * d).sqrt(), boost })
    }

    pub fn for_law<T: Real>(law: &GammaTimeLaw<T>) -> Result<Self> {
        Self::new(law.shape().as_f64(), law.tau().as_f64())
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let x = self.sample_base(rng);
        match self.boost {
            Some(inv) => {
                let u: f64 = open01(rng);
                x * u.powf(inv) * self.scale
            }
            None => x * self.scale,
        }
    }

    fn sample_base<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let x: f64 = StandardNormal.sample(rng);
            let v = 1.0 + self.c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u: f64 = open01(rng);
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 {
                return self.d * v;
            }
            if u.ln() < 0.5 * x2 + self.d * (1.0 - v + v.ln()) {
                return self.d * v;
            }
        }
    }
}

fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// `n` independent draws of the evolution time from the law's Gamma kernel.
pub fn sample_times<T: Real>(law: &GammaTimeLaw<T>, n: usize, seed: u64) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    if law.t().is_zero() {
        return Ok(vec![T::zero(); n]);
    }
    let sampler = GammaSampler::for_law(law)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| T::lit(sampler.sample(&mut rng))).collect())
}

/// Stream `chunk` of the seeded generator.
pub(crate) fn chunk_rng(seed: u64, chunk: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}
