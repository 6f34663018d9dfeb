//! Closed-form Rabi probabilities and decay/frequency predictions.

use crate::scalar::Real;

/// Undamped vacuum Rabi probability `(1 - cos 2Ω_R t)/2`.
pub fn vacuum_rabi_probability<T: Real>(omega_r: T, t: T) -> T {
    T::lit(0.5) * (T::one() - (T::lit(2.0) * omega_r * t).cos())
}

/// Decay rate and shifted frequency of Gamma-averaged Rabi oscillations at Rabi frequency `omega`:
/// `γ = ln(1 + 4Ω²τ²)/(2τ)` (1/s), `ν = atan(2Ωτ)/τ` (rad/s).
pub fn gamma_nu_exact<T: Real>(omega: T, tau: T) -> (T, T) {
    if tau.is_zero() {
        return (T::zero(), T::lit(2.0) * omega);
    }
    let x = T::lit(2.0) * omega * tau;
    ((x * x).ln_1p() / (T::lit(2.0) * tau), x.atan() / tau)
}

/// Small-τ decay rate `2Ω²τ`.
pub fn gamma_small_tau<T: Real>(omega: T, tau: T) -> T {
    T::lit(2.0) * omega * omega * tau
}

/// `½(1 - e^{-γt} cos νt)` with `(γ, ν)` from [`gamma_nu_exact`]; `tau = 0` gives the undamped form.
pub fn damped_rabi_probability<T: Real>(omega_r: T, tau: T, t: T) -> T {
    let (gamma, nu) = gamma_nu_exact(omega_r, tau);
    T::lit(0.5) * (T::one() - (-gamma * t).exp() * (nu * t).cos())
}
