//! Estimators for the fluctuation strength τ and the transit-time argument.

use crate::error::{Error, Result};
use crate::models::gamma_nu_exact;
use crate::scalar::Real;

/// `τ = γ / 2Ω²`, inverting the small-τ decay law.
pub fn estimate_tau_small<T: Real>(gamma: T, omega: T) -> Result<T> {
    if !(gamma >= T::zero()) || !(omega > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "need gamma >= 0 and omega > 0, got gamma = {gamma}, omega = {omega}"
        )));
    }
    Ok(gamma / (T::lit(2.0) * omega * omega))
}

/// Smallest τ solving `ln(1 + 4Ω²τ²)/(2τ) = γ`, found by bisection in
/// `[γ/2Ω², 10³ γ/2Ω²]`.
///
/// The decay rate rises with τ up to `2Ωτ ≈ 1.98` and falls beyond, so two
/// roots can exist; the small-τ branch is returned.
pub fn estimate_tau_exact<T: Real>(gamma: T, omega: T) -> Result<T> {
    if !(gamma > T::zero()) || !(omega > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "need gamma > 0 and omega > 0, got gamma = {gamma}, omega = {omega}"
        )));
    }
    let lo0 = estimate_tau_small(gamma, omega)?;
    let hi0 = lo0 * T::lit(1e3);
    let f = |tau: T| gamma_nu_exact(omega, tau).0 - gamma;

    // first sign change on a log-spaced scan
    const SCAN: usize = 400;
    let ratio = (hi0 / lo0).powf(T::one() / T::from_count(SCAN));
    let mut lo = lo0;
    let mut bracket = None;
    if f(lo) >= T::zero() {
        return Ok(lo);
    }
    for _ in 0..SCAN {
        let next = (lo * ratio).min(hi0);
        if f(next) >= T::zero() {
            bracket = Some((lo, next));
            break;
        }
        lo = next;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoRoot { lo: lo0.as_f64(), hi: hi0.as_f64() })?;

    let tol = T::tol(1e-14);
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if !(mid > lo && mid < hi) || hi - lo <= tol * hi {
            break;
        }
        if f(mid) >= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// Mean transit time `√π w / v̄` and its spread `t̄ · δv/v` for a mode waist `w`.
pub fn transit_time_spread<T: Real>(waist: T, v_mean: T, frac_v: T) -> Result<(T, T)> {
    if !(waist > T::zero()) || !(v_mean > T::zero()) || !(frac_v >= T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "need waist > 0, v_mean > 0, frac_v >= 0; got {waist}, {v_mean}, {frac_v}"
        )));
    }
    let t_mean = T::PI().sqrt() * waist / v_mean;
    Ok((t_mean, t_mean * frac_v))
}
