//! Trapped-ion blue-sideband Rabi oscillations, treated as independent doublets
//! `{|↓,n⟩, |↑,n+1⟩}` with Laguerre-polynomial Rabi frequencies.

use super::doublet::DoubletModel;
use super::laguerre::laguerre_assoc;
use super::rates::{gamma_nu_exact, gamma_small_tau};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Raman-coupled ion parameters. All frequencies in rad/s, `phi` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonTrapParams<T: Real> {
    /// bare Rabi parameter Ω, proportional to the Raman laser intensities
    pub omega: T,
    /// Lamb–Dicke parameter η
    pub eta: T,
    pub n_max: usize,
    /// detuning δ
    pub delta: T,
    /// trap frequency ω_z
    pub omega_z: T,
    /// laser phase φ
    pub phi: T,
}

impl<T: Real> IonTrapParams<T> {
    /// Validated parameters; the doublet reduction only covers the blue sideband `δ = ω_z`.
    pub fn new(omega: T, eta: T, n_max: usize, delta: T, omega_z: T, phi: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be > 0, got {omega}")));
        }
        if !(eta > T::zero() && eta < T::one()) {
            return Err(Error::InvalidParameter(format!("eta must lie in (0, 1), got {eta}")));
        }
        if !(omega_z > T::zero()) || !omega_z.is_finite() {
            return Err(Error::InvalidParameter(format!("omega_z must be > 0, got {omega_z}")));
        }
        if (delta - omega_z).abs() > T::tol(1e-12) * omega_z {
            return Err(Error::InvalidParameter(format!(
                "blue-sideband model requires delta = omega_z (got delta = {delta}, omega_z = {omega_z})"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter("phi must be finite".into()));
        }
        Ok(Self { omega, eta, n_max, delta, omega_z, phi })
    }

    /// Blue-sideband parameters (`δ = ω_z`, `φ = 0`) from the bare Rabi parameter.
    pub fn blue_sideband(omega: T, eta: T, n_max: usize, omega_z: T) -> Result<Self> {
        Self::new(omega, eta, n_max, omega_z, omega_z, T::zero())
    }

    /// Blue-sideband parameters chosen so that the `n = 0` doublet frequency equals `omega0`.
    pub fn from_omega0(omega0: T, eta: T, n_max: usize, omega_z: T) -> Result<Self> {
        let omega = omega0 / (eta * (-eta * eta * T::lit(0.5)).exp());
        Self::blue_sideband(omega, eta, n_max, omega_z)
    }
}

/// Which decay law the ion probability uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecayMode {
    /// `γ_n = ln(1+4Ω_n²τ²)/2τ`, oscillating at `ν_n = atan(2Ω_nτ)/τ`
    #[default]
    Exact,
    /// `γ_n = 2Ω_n²τ`, oscillating at `2Ω_n`
    SmallTau,
}

fn check_level<T: Real>(p: &IonTrapParams<T>, n: usize) -> Result<()> {
    if n > p.n_max {
        return Err(Error::InvalidParameter(format!("Fock index {n} exceeds n_max = {}", p.n_max)));
    }
    Ok(())
}

/// `Ω_n = Ω e^{-η²/2} η L_n^1(η²) / √(n+1)`.
pub fn ion_rabi_frequency<T: Real>(p: &IonTrapParams<T>, n: usize) -> Result<T> {
    check_level(p, n)?;
    let eta2 = p.eta * p.eta;
    Ok(p.omega * (-eta2 * T::lit(0.5)).exp() * p.eta * laguerre_assoc(n, T::one(), eta2)
        / T::from_count(n + 1).sqrt())
}

/// The `{|↓,n⟩, |↑,n+1⟩}` doublet at frequency `Ω_n`.
pub fn ion_doublet<T: Real>(p: &IonTrapParams<T>, n: usize) -> Result<DoubletModel<T>> {
    let rabi = ion_rabi_frequency(p, n)?;
    DoubletModel::new(rabi, (format!("|down,{n}>"), format!("|up,{}>", n + 1)))
}

/// Decay rate and oscillation frequency of the `n`-th doublet.
pub fn ion_rates<T: Real>(p: &IonTrapParams<T>, n: usize, tau: T, mode: DecayMode) -> Result<(T, T)> {
    let rabi = ion_rabi_frequency(p, n)?;
    if !(tau >= T::zero()) {
        return Err(Error::InvalidParameter(format!("tau must be >= 0, got {tau}")));
    }
    Ok(match mode {
        DecayMode::Exact => gamma_nu_exact(rabi, tau),
        DecayMode::SmallTau => (gamma_small_tau(rabi, tau), T::lit(2.0) * rabi),
    })
}

/// `P_↓(n, t) = ½(1 + e^{-γ_n t} cos(ν_n t))`; `tau = 0` gives undamped `cos(2Ω_n t)`.
pub fn ion_probability<T: Real>(n: usize, t: T, tau: T, p: &IonTrapParams<T>, mode: DecayMode) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(Error::InvalidParameter(format!("t must be >= 0, got {t}")));
    }
    let (gamma, nu) = ion_rates(p, n, tau, mode)?;
    Ok(T::lit(0.5) * (T::one() + (-gamma * t).exp() * (nu * t).cos()))
}

/// Small-τ decay rate of the `n`-th doublet, `2Ω_n²τ`.
pub fn gamma_n_predicted<T: Real>(p: &IonTrapParams<T>, tau: T, n: usize) -> Result<T> {
    Ok(gamma_small_tau(ion_rabi_frequency(p, n)?, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const OMEGA_Z: f64 = 2.0 * PI * 11.2e6;

    fn params(eta: f64) -> IonTrapParams<f64> {
        IonTrapParams::from_omega0(2.0 * PI * 94e3, eta, 16, OMEGA_Z).unwrap()
    }

    #[test]
    fn ground_doublet_frequency() {
        let p = IonTrapParams::blue_sideband(1e6, 0.202, 4, OMEGA_Z).unwrap();
        let expected = 1e6 * 0.202 * (-0.202f64 * 0.202 / 2.0).exp();
        assert!((ion_rabi_frequency(&p, 0).unwrap() - expected).abs() < 1e-9);
        let p = params(0.202);
        assert!((ion_rabi_frequency(&p, 0).unwrap() - 2.0 * PI * 94e3).abs() < 1e-8);
    }

    #[test]
    fn frequency_ratios_at_eta_0202() {
        let p = params(0.202);
        let w0 = ion_rabi_frequency(&p, 0).unwrap();
        let r1 = ion_rabi_frequency(&p, 1).unwrap() / w0;
        let r16 = ion_rabi_frequency(&p, 16).unwrap() / w0;
        assert!((r1 - 1.959_196 / 2f64.sqrt()).abs() < 1e-12);
        assert!((r1 - 1.385_360_78).abs() < 1e-8);
        assert!((r16 - 2.908_123_25).abs() < 1e-8);
    }

    #[test]
    fn lamb_dicke_limit() {
        let p = params(0.01);
        let w0 = ion_rabi_frequency(&p, 0).unwrap();
        for n in 0..=16 {
            let r = ion_rabi_frequency(&p, n).unwrap() / w0;
            assert!((r / ((n + 1) as f64).sqrt() - 1.0).abs() < 2e-3, "n={n}");
        }
    }

    #[test]
    fn probability_limits() {
        let p = params(0.202);
        for mode in [DecayMode::Exact, DecayMode::SmallTau] {
            assert_eq!(ion_probability(3, 0.0, 1.7e-8, &p, mode).unwrap(), 1.0);
            assert!((ion_probability(3, 1.0, 1.7e-8, &p, mode).unwrap() - 0.5).abs() < 1e-12);
        }
        assert!(ion_probability(17, 0.0, 1.7e-8, &p, DecayMode::Exact).is_err());
    }

    #[test]
    fn predicted_gamma_ratio() {
        let p = params(0.202);
        let tau = 1.706e-8;
        let g0 = gamma_n_predicted(&p, tau, 0).unwrap();
        for n in 0..=16 {
            let ratio = ion_rabi_frequency(&p, n).unwrap() / ion_rabi_frequency(&p, 0).unwrap();
            let g = gamma_n_predicted(&p, tau, n).unwrap();
            assert!((g / g0 - ratio * ratio).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_off_sideband() {
        assert!(IonTrapParams::new(1.0, 0.2, 3, 0.9 * OMEGA_Z, OMEGA_Z, 0.0).is_err());
        assert!(IonTrapParams::new(1.0, 1.2, 3, OMEGA_Z, OMEGA_Z, 0.0).is_err());
    }
}
