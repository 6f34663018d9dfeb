//! The Gamma kernel `P(t, t')` over the random evolution time, and its pulse-area twin.
//!
//! With shape `t/τ` and scale `τ`, the kernel has mean `t` and variance `tτ`
//! for every `t`, which is what makes averaged evolution a semigroup.

use super::quadrature::integrate_pieces;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Laboratory time `t` and fluctuation strength `τ`, both in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTimeLaw<T: Real> {
    t: T,
    tau: T,
}

impl<T: Real> GammaTimeLaw<T> {
    pub fn new(t: T, tau: T) -> Result<Self> {
        if !(t >= T::zero()) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!("t must be finite and >= 0, got {t}")));
        }
        if !(tau > T::zero()) || !tau.is_finite() {
            return Err(Error::InvalidParameter(format!("tau must be finite and > 0, got {tau}")));
        }
        if !(t / tau).is_finite() {
            return Err(Error::InvalidParameter(format!("shape t/tau = {t}/{tau} is not finite")));
        }
        Ok(Self { t, tau })
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn tau(&self) -> T {
        self.tau
    }

    /// Gamma shape parameter `t/τ`.
    pub fn shape(&self) -> T {
        self.t / self.tau
    }

    pub fn mean(&self) -> T {
        self.t
    }

    pub fn variance(&self) -> T {
        self.t * self.tau
    }

    /// `2/√(t/τ)`.
    pub fn skewness(&self) -> T {
        T::lit(2.0) / self.shape().sqrt()
    }
}

/// Pulse-area law: time `t` (s), strength `τ` (s), mean Rabi frequency `Ω = ⟨A⟩/t` (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseAreaLaw<T: Real> {
    time: GammaTimeLaw<T>,
    omega: T,
}

impl<T: Real> PulseAreaLaw<T> {
    pub fn new(t: T, tau: T, omega: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be finite and > 0, got {omega}")));
        }
        Ok(Self { time: GammaTimeLaw::new(t, tau)?, omega })
    }

    pub fn t(&self) -> T {
        self.time.t
    }

    pub fn tau(&self) -> T {
        self.time.tau
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// The underlying time law with the same `(t, τ)`.
    pub fn time_law(&self) -> GammaTimeLaw<T> {
        self.time
    }

    /// Relative spread `σ(A)/⟨A⟩ = √(τ/t)`.
    pub fn fractional_spread(&self) -> T {
        (self.tau() / self.t()).sqrt()
    }
}

/// Natural log of the Gamma function (Lanczos, g = 7, 9 terms; reflection below 1/2).
pub fn ln_gamma<T: Real>(x: T) -> T {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < T::lit(0.5) {
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(COEF[0]);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += T::lit(c) / (x + T::from_count(i));
    }
    let t = x + T::lit(G + 0.5);
    T::lit(0.5) * (T::TAU()).ln() + (x + T::lit(0.5)) * t.ln() - t + acc.ln()
}

/// Gamma density with the given shape and unit scale, computed through logarithms.
fn standard_gamma_density<T: Real>(shape: T, s: T) -> T {
    if s.is_zero() {
        return if shape < T::one() {
            T::infinity()
        } else if shape == T::one() {
            T::one()
        } else {
            T::zero()
        };
    }
    (-s + (shape - T::one()) * s.ln() - ln_gamma(shape)).exp()
}

/// `P(t, t') = e^{-t'/τ} (t'/τ)^{t/τ-1} / (τ Γ(t/τ))`, in 1/s.
///
/// At `t = 0` the kernel is a Dirac delta and has no density; that case is rejected.
pub fn gamma_pdf<T: Real>(law: &GammaTimeLaw<T>, tprime: T) -> Result<T> {
    if law.t.is_zero() {
        return Err(Error::InvalidParameter(
            "t = 0: the kernel degenerates to a Dirac delta at t' = 0 and has no density".into(),
        ));
    }
    if !(tprime >= T::zero()) {
        return Err(Error::InvalidParameter(format!("t' must be >= 0, got {tprime}")));
    }
    Ok(standard_gamma_density(law.shape(), tprime / law.tau) / law.tau)
}

/// `P(t, A) = e^{-A/Ωτ} (A/Ωτ)^{t/τ-1} / (Ωτ Γ(t/τ))` for the dimensionless pulse area `A`.
pub fn area_pdf<T: Real>(law: &PulseAreaLaw<T>, area: T) -> Result<T> {
    if law.t().is_zero() {
        return Err(Error::InvalidParameter(
            "t = 0: the area kernel degenerates to a Dirac delta and has no density".into(),
        ));
    }
    if !(area >= T::zero()) {
        return Err(Error::InvalidParameter(format!("pulse area must be >= 0, got {area}")));
    }
    let scale = law.omega * law.tau();
    Ok(standard_gamma_density(law.time.shape(), area / scale) / scale)
}

/// `(⟨A⟩, σ²(A)) = (Ωt, Ω²tτ)`.
pub fn area_moments<T: Real>(law: &PulseAreaLaw<T>) -> (T, T) {
    let w = law.omega;
    (w * law.t(), w * w * law.t() * law.tau())
}

/// Moments of the time kernel obtained by numerical quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMoments<T: Real> {
    pub normalization: T,
    /// seconds
    pub mean: T,
    /// seconds²
    pub variance: T,
    pub skewness: T,
}

/// Integrates the kernel numerically for its normalization, mean, variance and skewness.
pub fn kernel_moments<T: Real>(law: &GammaTimeLaw<T>) -> Result<KernelMoments<T>> {
    if law.t.is_zero() {
        return Err(Error::InvalidParameter("t = 0: kernel moments of a Dirac delta are trivial".into()));
    }
    let a = law.shape();
    let sd = a.sqrt();
    let rel = T::tol(1e-13);

    let normalization = standard_moment(a, |_| T::one(), rel, rel)?;
    let mean = standard_moment(a, |s| s, rel * a, rel)? / normalization;
    let c2 = standard_moment(a, |s| (s - mean).powi(2), rel * a, rel)? / normalization;
    let c3 = standard_moment(a, |s| (s - mean).powi(3), rel * sd.powi(3), rel)? / normalization;

    Ok(KernelMoments {
        normalization,
        mean: mean * law.tau,
        variance: c2 * law.tau * law.tau,
        skewness: c3 / c2.powf(T::lit(1.5)),
    })
}

/// `∫_0^∞ h(s) g_a(s) ds` for the unit-scale Gamma density `g_a`.
fn standard_moment<T: Real, H: Fn(T) -> T>(a: T, h: H, abs_tol: T, rel_tol: T) -> Result<T> {
    let sd = a.sqrt();
    let upper = a + T::lit(40.0) * sd + T::lit(80.0);
    let ln_norm = ln_gamma(a);

    // [0, 1]: for small shapes substitute u = s^a, which removes the s^{a-1} singularity.
    let head = if a < T::lit(2.0) {
        let inv = T::one() / a;
        let ln_gamma_a1 = ln_gamma(a + T::one());
        integrate_pieces(
            |u: T| {
                let s = u.powf(inv);
                h(s) * (-s - ln_gamma_a1).exp()
            },
            &[T::zero(), T::one()],
            abs_tol,
            rel_tol,
        )?
    } else {
        integrate_pieces(
            |s: T| h(s) * standard_gamma_density(a, s),
            &[T::zero(), T::one()],
            abs_tol,
            rel_tol,
        )?
    };

    let mut breaks = vec![T::one()];
    for k in [-8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 16.0] {
        let p = a + T::lit(k) * sd;
        if p > *breaks.last().expect("non-empty") && p < upper {
            breaks.push(p);
        }
    }
    breaks.push(upper);
    let tail = integrate_pieces(
        |s: T| h(s) * (-s + (a - T::one()) * s.ln() - ln_norm).exp(),
        &breaks,
        abs_tol,
        rel_tol,
    )?;
    Ok(head + tail)
}
