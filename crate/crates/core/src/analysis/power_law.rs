use crate::error::{Error, Result};
use crate::scalar::Real;

/// `value ≈ prefactor · (n+1)^exponent`, fitted in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit<T: Real> {
    pub prefactor: T,
    pub exponent: T,
    /// max over inputs of `|fit/value - 1|`
    pub max_rel_dev: T,
}

impl<T: Real> PowerLawFit<T> {
    pub fn evaluate(&self, n_plus_1: u64) -> T {
        self.prefactor * T::lit(n_plus_1 as f64).powf(self.exponent)
    }
}

/// Ordinary least squares of `ln value` on `ln(n+1)`.
pub fn fit_power_law<T: Real>(pairs: &[(u64, T)]) -> Result<PowerLawFit<T>> {
    if pairs.len() < 3 {
        return Err(Error::InvalidParameter(format!("power-law fit needs at least 3 pairs, got {}", pairs.len())));
    }
    if let Some((n, v)) = pairs.iter().find(|(n, v)| *n == 0 || !(*v > T::zero()) || !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "power-law fit needs n+1 >= 1 and positive finite values, got ({n}, {v})"
        )));
    }
    let xs: Vec<T> = pairs.iter().map(|(n, _)| T::lit(*n as f64).ln()).collect();
    let ys: Vec<T> = pairs.iter().map(|(_, v)| v.ln()).collect();
    let m = T::from_count(pairs.len());
    let mx = xs.iter().copied().sum::<T>() / m;
    let my = ys.iter().copied().sum::<T>() / m;
    let sxx: T = xs.iter().map(|x| (*x - mx).powi(2)).sum();
    if !(sxx > T::zero()) {
        return Err(Error::InvalidParameter("power-law fit needs at least two distinct n+1 values".into()));
    }
    let sxy: T = xs.iter().zip(&ys).map(|(x, y)| (*x - mx) * (*y - my)).sum();
    let exponent = sxy / sxx;
    let prefactor = (my - exponent * mx).exp();
    let fit = PowerLawFit { prefactor, exponent, max_rel_dev: T::zero() };
    let max_rel_dev = pairs
        .iter()
        .map(|(n, v)| (fit.evaluate(*n) / *v - T::one()).abs())
        .fold(T::zero(), T::max);
    Ok(PowerLawFit { max_rel_dev, ..fit })
}
