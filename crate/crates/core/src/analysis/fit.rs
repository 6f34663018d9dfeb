//! Damped-cosine fitting: `y(t) = offset + sign·amplitude·e^{-γt} cos(νt)`.
//!
//! The frequency is seeded from the dominant peak of a direct (non-uniform)
//! Fourier sum, the decay rate from a log-envelope regression over extrema,
//! offset and amplitude from a linear solve, and the four parameters are then
//! polished by Levenberg–Marquardt with `γ ≥ 0` enforced by projection.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITERATIONS: usize = 200;
const DFT_OVERSAMPLE: usize = 8;

/// Samples `(t, value)` with strictly ascending times (seconds).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T: Real> {
    points: Vec<(T, T)>,
}

impl<T: Real> TimeSeries<T> {
    pub fn new(points: Vec<(T, T)>) -> Result<Self> {
        if let Some(k) = points.iter().position(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("point {k} is not finite")));
        }
        if let Some(k) = points.windows(2).position(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidParameter(format!(
                "times must be strictly ascending (points {k} and {})",
                k + 1
            )));
        }
        Ok(Self { points })
    }

    pub fn from_columns(times: &[T], values: &[T]) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        Self::new(times.iter().copied().zip(values.iter().copied()).collect())
    }

    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedCosineFit<T: Real> {
    /// 1/s
    pub gamma: T,
    /// rad/s
    pub nu: T,
    pub amplitude: T,
    pub offset: T,
    /// +1 or -1
    pub sign: i8,
    pub rms_residual: T,
    /// linearized 1σ uncertainty of `gamma` from the residual scatter, 1/s
    pub gamma_std_err: T,
    /// linearized 1σ uncertainty of `nu`, rad/s
    pub nu_std_err: T,
    pub iterations: usize,
}

impl<T: Real> DampedCosineFit<T> {
    pub fn evaluate(&self, t: T) -> T {
        let s = if self.sign < 0 { -T::one() } else { T::one() };
        self.offset + s * self.amplitude * (-self.gamma * t).exp() * (self.nu * t).cos()
    }
}

/// Parameters in scaled time `u = t / t_scale`: `[offset, signed amplitude, g, w]`.
type Params<T> = [T; 4];

fn model<T: Real>(p: &Params<T>, u: T) -> T {
    p[0] + p[1] * (-p[2] * u).exp() * (p[3] * u).cos()
}

fn cost<T: Real>(p: &Params<T>, us: &[T], ys: &[T]) -> T {
    us.iter().zip(ys).map(|(&u, &y)| (model(p, u) - y).powi(2)).sum()
}

pub fn fit_damped_cosine<T: Real>(series: &TimeSeries<T>) -> Result<DampedCosineFit<T>> {
    let n = series.len();
    if n < 8 {
        return Err(Error::InvalidParameter(format!("damped-cosine fit needs at least 8 points, got {n}")));
    }
    let t_first = series.points[0].0;
    let t_last = series.points[n - 1].0;
    let t_scale = t_last.abs().max(t_first.abs());
    let us: Vec<T> = series.points.iter().map(|p| p.0 / t_scale).collect();
    let ys: Vec<T> = series.points.iter().map(|p| p.1).collect();
    let span = us[n - 1] - us[0];

    let w0 = dominant_frequency(&us, &ys, span)?;
    let g0 = envelope_decay(&us, &ys);
    let (c0, b0) = linear_coefficients(&us, &ys, g0, w0);
    let mut p: Params<T> = [c0, b0, g0, w0];

    let y_scale = ys.iter().map(|y| y.abs()).fold(T::zero(), T::max).max(T::min_positive_value());
    let tol = T::tol(1e-10);
    let mut current = cost(&p, &us, &ys);
    let mut lambda = T::lit(1e-3);
    let exact = T::epsilon() * T::epsilon() * y_scale * y_scale * T::from_count(n);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        if current <= exact {
            converged = true;
            break;
        }
        let (jtj, jtr) = normal_equations(&p, &us, &ys);
        let mut accepted = None;
        while lambda < T::lit(1e16) {
            let mut a = jtj;
            for i in 0..4 {
                a[i][i] += lambda * jtj[i][i].max(T::min_positive_value());
            }
            let rhs = [-jtr[0], -jtr[1], -jtr[2], -jtr[3]];
            let Some(delta) = solve4(a, rhs) else {
                lambda *= T::lit(10.0);
                continue;
            };
            let mut trial = p;
            for i in 0..4 {
                trial[i] += delta[i];
            }
            trial[2] = trial[2].max(T::zero());
            let trial_cost = cost(&trial, &us, &ys);
            if trial_cost < current {
                accepted = Some((trial, trial_cost));
                lambda = (lambda / T::lit(3.0)).max(T::lit(1e-12));
                break;
            }
            lambda *= T::lit(4.0);
        }
        let Some((trial, trial_cost)) = accepted else {
            // no descent direction left at any damping: stationary point
            converged = true;
            break;
        };
        let scales = [y_scale, y_scale, p[3].abs(), p[3].abs()];
        let small = (0..4).all(|i| (trial[i] - p[i]).abs() <= tol * p[i].abs().max(scales[i]));
        p = trial;
        current = trial_cost;
        if small {
            converged = true;
            break;
        }
    }

    if !converged {
        return Err(Error::FitNotConverged {
            iterations,
            gamma: (p[2] / t_scale).as_f64(),
            nu: (p[3].abs() / t_scale).as_f64(),
            amplitude: p[1].abs().as_f64(),
            offset: p[0].as_f64(),
        });
    }

    // the optimizer may collapse ν onto a pure exponential trend
    if p[3].abs() * (us[us.len() - 1] - us[0]) < T::PI() {
        return Err(Error::NoOscillation);
    }

    let (gamma_std_err, nu_std_err) = rate_std_errors(&p, &us, &ys, current);
    Ok(DampedCosineFit {
        gamma: p[2] / t_scale,
        nu: p[3].abs() / t_scale,
        amplitude: p[1].abs(),
        offset: p[0],
        sign: if p[1] < T::zero() { -1 } else { 1 },
        rms_residual: (current / T::from_count(n)).sqrt(),
        gamma_std_err: gamma_std_err / t_scale,
        nu_std_err: nu_std_err / t_scale,
        iterations,
    })
}

/// Linearized standard errors of `g` and `w` from `s² (JᵀJ)⁻¹` with `s² = cost/(n-4)`.
fn rate_std_errors<T: Real>(p: &Params<T>, us: &[T], ys: &[T], cost: T) -> (T, T) {
    let (jtj, _) = normal_equations(p, us, ys);
    let s2 = cost / T::from_count(us.len() - 4);
    let diag = |k: usize| {
        let mut e = [T::zero(); 4];
        e[k] = T::one();
        solve4(jtj, e).map_or(T::infinity(), |col| (s2 * col[k]).max(T::zero()).sqrt())
    };
    (diag(2), diag(3))
}

/// Peak of `|Σ (y_k - ȳ) e^{-iwu_k}|²` over `(0, Nyquist]`, refined by golden section.
fn dominant_frequency<T: Real>(us: &[T], ys: &[T], span: T) -> Result<T> {
    let n = us.len();
    let mean = ys.iter().copied().sum::<T>() / T::from_count(n);
    let power = |w: T| -> T {
        let (mut re, mut im) = (T::zero(), T::zero());
        for (&u, &y) in us.iter().zip(ys) {
            let (s, c) = (w * u).sin_cos();
            re += (y - mean) * c;
            im -= (y - mean) * s;
        }
        re * re + im * im
    };
    let nyquist = T::PI() * T::from_count(n - 1) / span;
    let step = T::TAU() / span / T::from_count(DFT_OVERSAMPLE);
    let bins = (nyquist / step).floor().to_usize().unwrap_or(0).max(2);

    let mut best = (T::zero(), T::zero(), 0usize);
    for j in 0..=bins {
        let w = step * T::from_count(j);
        let pw = if j == 0 { T::zero() } else { power(w) };
        if pw > best.1 {
            best = (w, pw, j);
        }
    }
    if best.2 == 0 || best.1 <= T::zero() {
        return Err(Error::NoOscillation);
    }

    // golden-section refinement inside the neighbouring bins
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (power(x1), power(x2));
    for _ in 0..80 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = power(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = power(x2);
        }
    }
    let w = (a + b) * T::lit(0.5);
    // less than half a cycle across the record: a trend, not an oscillation
    if w * span < T::PI() {
        return Err(Error::NoOscillation);
    }
    Ok(w)
}

/// Decay rate from a least-squares line through `ln|y - ȳ|` at the local extrema.
fn envelope_decay<T: Real>(us: &[T], ys: &[T]) -> T {
    let n = ys.len();
    let mean = ys.iter().copied().sum::<T>() / T::from_count(n);
    let dev: Vec<T> = ys.iter().map(|&y| (y - mean).abs()).collect();
    let floor = dev.iter().copied().fold(T::zero(), T::max) * T::lit(1e-6);
    let pts: Vec<(T, T)> = (1..n - 1)
        .filter(|&k| dev[k] >= dev[k - 1] && dev[k] >= dev[k + 1] && dev[k] > floor)
        .map(|k| (us[k], dev[k].ln()))
        .collect();
    if pts.len() < 2 {
        return T::zero();
    }
    let m = T::from_count(pts.len());
    let mx = pts.iter().map(|p| p.0).sum::<T>() / m;
    let my = pts.iter().map(|p| p.1).sum::<T>() / m;
    let sxx: T = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= T::zero() {
        return T::zero();
    }
    (-sxy / sxx).max(T::zero())
}

/// Least-squares `(c, b)` for `y ≈ c + b e^{-gu} cos(wu)` at fixed `(g, w)`.
fn linear_coefficients<T: Real>(us: &[T], ys: &[T], g: T, w: T) -> (T, T) {
    let (mut s1, mut sf, mut sff, mut sy, mut sfy) = (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
    for (&u, &y) in us.iter().zip(ys) {
        let f = (-g * u).exp() * (w * u).cos();
        s1 += T::one();
        sf += f;
        sff += f * f;
        sy += y;
        sfy += f * y;
    }
    let det = s1 * sff - sf * sf;
    if det.abs() <= T::epsilon() * s1 * sff {
        return (sy / s1, T::zero());
    }
    ((sy * sff - sf * sfy) / det, (s1 * sfy - sf * sy) / det)
}

fn normal_equations<T: Real>(p: &Params<T>, us: &[T], ys: &[T]) -> ([[T; 4]; 4], [T; 4]) {
    let mut jtj = [[T::zero(); 4]; 4];
    let mut jtr = [T::zero(); 4];
    for (&u, &y) in us.iter().zip(ys) {
        let e = (-p[2] * u).exp();
        let (s, c) = (p[3] * u).sin_cos();
        let r = p[0] + p[1] * e * c - y;
        let row = [T::one(), e * c, -u * p[1] * e * c, -u * p[1] * e * s];
        for i in 0..4 {
            jtr[i] += row[i] * r;
            for j in 0..4 {
                jtj[i][j] += row[i] * row[j];
            }
        }
    }
    (jtj, jtr)
}

/// Gaussian elimination with partial pivoting.
fn solve4<T: Real>(mut a: [[T; 4]; 4], mut b: [T; 4]) -> Option<[T; 4]> {
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))?;
        if !(a[pivot][col].abs() > T::zero()) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [T::zero(); 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for k in (row + 1)..4 {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn synth(gamma: f64, nu: f64, amp: f64, offset: f64, t_max: f64, n: usize) -> TimeSeries<f64> {
        let pts = (0..n)
            .map(|k| {
                let t = t_max * k as f64 / (n - 1) as f64;
                (t, offset + amp * (-gamma * t).exp() * (nu * t).cos())
            })
            .collect();
        TimeSeries::new(pts).unwrap()
    }

    #[test]
    fn recovers_cavity_curve() {
        let s = synth(2.469e4, 3.135e5, -0.5, 0.5, 100e-6, 400);
        let f = fit_damped_cosine(&s).unwrap();
        assert!((f.gamma / 2.469e4 - 1.0).abs() < 1e-6, "{f:?}");
        assert!((f.nu / 3.135e5 - 1.0).abs() < 1e-6, "{f:?}");
        assert!((f.amplitude - 0.5).abs() < 1e-6);
        assert!((f.offset - 0.5).abs() < 1e-6);
        assert_eq!(f.sign, -1);
    }

    #[test]
    fn undamped_cosine_gives_zero_gamma() {
        let s = synth(0.0, 2.0 * PI * 3.0, 1.0, 0.2, 2.0, 300);
        let f = fit_damped_cosine(&s).unwrap();
        assert!(f.gamma.abs() < 1e-8, "{f:?}");
        assert!((f.nu - 2.0 * PI * 3.0).abs() < 1e-8);
        assert_eq!(f.sign, 1);
    }

    #[test]
    fn nonuniform_sampling() {
        let pts = (0..200)
            .map(|k| {
                let t = (k as f64 / 199.0).powf(1.3) * 10.0;
                (t, 0.5 + 0.5 * (-0.1 * t).exp() * (2.3 * t).cos())
            })
            .collect();
        let f = fit_damped_cosine(&TimeSeries::new(pts).unwrap()).unwrap();
        assert!((f.gamma - 0.1).abs() < 1e-8 && (f.nu - 2.3).abs() < 1e-8, "{f:?}");
    }

    #[test]
    fn monotone_decay_has_no_oscillation() {
        let pts = (0..100).map(|k| (k as f64, (-0.05 * k as f64).exp())).collect();
        assert_eq!(fit_damped_cosine(&TimeSeries::new(pts).unwrap()).unwrap_err(), Error::NoOscillation);
        let flat = (0..20).map(|k| (k as f64, 0.3)).collect();
        assert_eq!(fit_damped_cosine(&TimeSeries::new(flat).unwrap()).unwrap_err(), Error::NoOscillation);
    }

    #[test]
    fn series_validation() {
        assert!(TimeSeries::new(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(TimeSeries::new(vec![(0.0, f64::NAN)]).is_err());
        let short = TimeSeries::new((0..5).map(|k| (k as f64, 0.0)).collect()).unwrap();
        assert!(fit_damped_cosine(&short).is_err());
    }
}
