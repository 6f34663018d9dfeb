use crate::scalar::Real;

/// Generalized Laguerre polynomial `L_n^α(x)` by the ascending three-term recurrence
///
/// ```text
/// L_0 = 1,  L_1 = 1 + α - x,
/// (k+1) L_{k+1} = (2k + 1 + α - x) L_k - (k + α) L_{k-1}
/// ```
///
/// Forward-stable for the `x ≤ 1`, `n ≤ 64` range used by sideband couplings.
pub fn laguerre_assoc<T: Real>(n: usize, alpha: T, x: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() + alpha - x;
    for k in 1..n {
        let kf = T::from_count(k);
        let next = ((T::lit(2.0) * kf + T::one() + alpha - x) * cur - (kf + alpha) * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Explicit sum L_n^α(x) = Σ_k (-1)^k C(n+α, n-k) x^k / k!  for integer α.
    fn explicit(n: usize, alpha: usize, x: f64) -> f64 {
        let binom = |a: usize, b: usize| -> f64 { (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64) };
        let mut fact = 1.0;
        (0..=n)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom(n + alpha, n - k) * x.powi(k as i32) / fact
            })
            .sum()
    }

    #[test]
    fn low_orders() {
        let x = 0.202f64 * 0.202;
        assert_eq!(laguerre_assoc(0, 1.0, 0.7), 1.0);
        assert!((laguerre_assoc(1, 1.0, x) - 1.959_196).abs() < 1e-12);
        assert!((laguerre_assoc(2, 1.0, x) - (3.0 - 3.0 * x + x * x / 2.0)).abs() < 1e-12);
        assert!((laguerre_assoc(2, 1.0, x) - 2.878_420_483_208).abs() < 1e-11);
    }

    #[test]
    fn matches_explicit_sum() {
        for n in 0..=16 {
            for &x in &[0.0, 0.0408, 0.3, 1.0] {
                let e = explicit(n, 1, x);
                assert!((laguerre_assoc(n, 1.0, x) - e).abs() < 1e-10 * e.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn value_at_origin_is_binomial() {
        // L_n^1(0) = n + 1
        for n in 0..40 {
            assert!((laguerre_assoc(n, 1.0f64, 0.0) - (n + 1) as f64).abs() < 1e-9);
        }
    }
}
