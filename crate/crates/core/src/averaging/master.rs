//! Phase-destroying master equations.
//!
//! The generalized equation `dρ/dt = -(1/τ) ln(1 + iLτ) ρ` is diagonal in the
//! Liouvillian eigenbasis and is stepped with its exact per-step exponential.
//! Its second-order truncation `dρ/dt = -i[G,ρ] - (τ/2)[G,[G,ρ]]` is integrated
//! with classical fixed-step RK4 in the original basis.

use num_complex::Complex;

use super::propagate::log_generator_step;
use crate::error::{Error, Result};
use crate::qcore::{check_dims, evolve_unitary_with, spectral_decompose, ComplexMatrix, DensityMatrix, HermitianGenerator};
use crate::scalar::{real, Real};

/// Upper bound on RK4 substeps for one trajectory.
const MAX_RK4_STEPS: usize = 50_000_000;

/// States on an ascending time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Real> {
    times: Vec<T>,
    states: Vec<DensityMatrix<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix<T>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&DensityMatrix<T>> {
        self.states.last()
    }

    /// Population of basis state `k` along the trajectory.
    pub fn populations(&self, k: usize) -> Vec<T> {
        self.states.iter().map(|s| s.population(k)).collect()
    }

    /// Largest `|tr ρ - 1|` over the trajectory.
    pub fn max_trace_drift(&self) -> T {
        self.states.iter().map(|s| (s.trace() - T::one()).abs()).fold(T::zero(), T::max)
    }
}

fn check_grid<T: Real>(t_grid: &[T]) -> Result<()> {
    match t_grid.first() {
        None => return Err(Error::InvalidParameter("time grid is empty".into())),
        Some(t0) if !t0.is_zero() => {
            return Err(Error::InvalidParameter(format!("time grid must start at 0, starts at {t0}")))
        }
        _ => {}
    }
    if let Some(w) = t_grid.windows(2).find(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time grid must be strictly ascending and finite ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if !(tau >= T::zero()) || !tau.is_finite() {
        return Err(Error::InvalidParameter(format!("tau must be finite and >= 0, got {tau}")));
    }
    Ok(())
}

/// Integrates `dρ_mn/dt = -(1/τ) ln(1 + iω_mn τ) ρ_mn` over `t_grid`.
///
/// `tau = 0` reduces to unitary evolution.
pub fn integrate_me_generalized<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    tau: T,
    t_grid: &[T],
) -> Result<Trajectory<T>> {
    check_dims(rho0, g.dim())?;
    check_tau(tau)?;
    check_grid(t_grid)?;

    let decomposition = spectral_decompose(g)?;
    let n = decomposition.dim();
    let mut rho = decomposition.to_eigenbasis(rho0.matrix());
    let mut states = Vec::with_capacity(t_grid.len());
    states.push(rho0.clone());

    for w in t_grid.windows(2) {
        let dt = w[1] - w[0];
        for m in 0..n {
            for k in 0..n {
                if m == k {
                    continue;
                }
                let omega = decomposition.bohr_frequency(m, k);
                let step = if tau.is_zero() {
                    Complex::from_polar(T::one(), -omega * dt)
                } else {
                    log_generator_step(omega, tau, dt)
                };
                rho[(m, k)] = rho[(m, k)] * step;
            }
        }
        states.push(DensityMatrix::from_map_output(decomposition.from_eigenbasis(&rho)));
    }
    Ok(Trajectory { times: t_grid.to_vec(), states })
}

/// RK4 integration of `dρ/dt = -i[G,ρ] - (τ/2)[G,[G,ρ]]` over `t_grid`.
///
/// The step never exceeds `min(τ, 2π/ω_max)/50`, with `ω_max` the largest Bohr
/// frequency, and is further limited to keep `h·(τ/2)·ω_max²` inside the RK4
/// stability region. At `tau = 0` the trajectory is exact unitary evolution.
pub fn integrate_me_second_order<T: Real>(
    rho0: &DensityMatrix<T>,
    g: &HermitianGenerator<T>,
    tau: T,
    t_grid: &[T],
) -> Result<Trajectory<T>> {
    check_dims(rho0, g.dim())?;
    check_tau(tau)?;
    check_grid(t_grid)?;

    let decomposition = spectral_decompose(g)?;
    if tau.is_zero() {
        // the double commutator vanishes; the remaining von Neumann flow is solved exactly
        let states = t_grid
            .iter()
            .map(|&t| evolve_unitary_with(&decomposition, rho0, t))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Trajectory { times: t_grid.to_vec(), states });
    }
    let omega_max = decomposition.max_bohr_frequency();
    let h_max = max_step(tau, omega_max);
    let span = *t_grid.last().expect("non-empty grid");
    if !h_max.is_infinite() {
        let needed = (span / h_max).ceil();
        if !(needed < T::from_count(MAX_RK4_STEPS)) {
            return Err(Error::StepUnderflow(format!(
                "step {h_max:e} s (tau = {tau:e} s, omega_max = {omega_max:e} rad/s) needs {needed:e} RK4 steps \
                 to reach t = {span:e} s, above the limit {MAX_RK4_STEPS}"
            )));
        }
    }

    let gm = g.matrix();
    let half_tau = tau * T::lit(0.5);
    let minus_i = Complex::new(T::zero(), -T::one());
    let rhs = |rho: &ComplexMatrix<T>| -> ComplexMatrix<T> {
        let c = gm.commutator(rho);
        let mut out = c.scale(minus_i);
        if !half_tau.is_zero() {
            out = &out - &gm.commutator(&c).scale_real(half_tau);
        }
        out
    };

    let mut rho = rho0.matrix().clone();
    let mut states = Vec::with_capacity(t_grid.len());
    states.push(rho0.clone());
    let sixth = T::one() / T::lit(6.0);
    let two = real(T::lit(2.0));

    for w in t_grid.windows(2) {
        let dt = w[1] - w[0];
        let substeps = if h_max.is_infinite() { 1 } else { (dt / h_max).ceil().to_usize().unwrap_or(1).max(1) };
        let h = dt / T::from_count(substeps);
        let half_h = h * T::lit(0.5);
        for _ in 0..substeps {
            let k1 = rhs(&rho);
            let k2 = rhs(&(&rho + &k1.scale_real(half_h)));
            let k3 = rhs(&(&rho + &k2.scale_real(half_h)));
            let k4 = rhs(&(&rho + &k3.scale_real(h)));
            let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(two);
            rho = &rho + &incr.scale_real(h * sixth);
        }
        let drift = (rho.trace().re - T::one()).abs();
        if drift > T::tol(1e-9) {
            return Err(Error::StepUnderflow(format!(
                "trace drifted by {drift:e} at t = {} s; the grid/step combination is numerically pathological",
                w[1]
            )));
        }
        states.push(DensityMatrix::from_map_output(rho.clone()));
    }
    Ok(Trajectory { times: t_grid.to_vec(), states })
}

fn max_step<T: Real>(tau: T, omega_max: T) -> T {
    let fifty = T::lit(50.0);
    let mut h = T::infinity();
    if tau > T::zero() {
        h = h.min(tau / fifty);
    }
    if omega_max > T::zero() {
        // four times finer than τ/50 on the oscillation: RK4 phase error stays below 1e-8 per period
        h = h.min(T::TAU() / omega_max / (fifty * T::lit(4.0)));
        if tau > T::zero() {
            // real-axis RK4 stability bound is 2.785; keep a margin
            let damping = tau * T::lit(0.5) * omega_max * omega_max;
            h = h.min(T::lit(2.5) / damping);
        }
    }
    h
}
