//! Cross-checks between independent routes to the same quantity.

mod common;

use std::f64::consts::PI;

use nondiss::analysis::{fit_damped_cosine, TimeSeries};
use nondiss::averaging::quadrature::integrate;
use nondiss::averaging::{
    area_moments, area_pdf, averaged_propagate, averaged_propagate_mc, gamma_pdf, integrate_me_generalized,
    sample_times, GammaTimeLaw, PulseAreaLaw,
};
use nondiss::models::{
    damped_rabi_probability, excited_index, gamma_nu_exact, ground_index, ion_doublet, ion_probability,
    jc_hamiltonian, vacuum_doublet, vacuum_rabi_probability, CavityQedParams, DecayMode, IonTrapParams,
};
use nondiss::qcore::{evolve_unitary, spectral_decompose, ComplexMatrix, DensityMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

const OMEGA_R: f64 = 2.0 * PI * 25e3;
const TAU_CAVITY: f64 = 5.066e-7;
const OMEGA0_ION: f64 = 2.0 * PI * 94e3;
const TAU_ION: f64 = 1.706e-8;

fn sample_moments(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn sampled_times_match_gamma_moments() {
    let n = 1_000_000;
    for (shape, seed) in [(4.0, 11u64), (0.3, 12)] {
        let tau = 2.5e-7f64;
        let law = GammaTimeLaw::new(shape * tau, tau).unwrap();
        let xs = sample_times(&law, n, seed).unwrap();
        let (mean, var) = sample_moments(&xs);
        let sigma2 = law.variance();
        let mean_err = (sigma2 / n as f64).sqrt();
        // Var(s²) ≈ σ⁴ (2 + 6/shape) / n for a Gamma law
        let var_err = sigma2 * ((2.0 + 6.0 / shape) / n as f64).sqrt();
        assert!((mean - law.mean()).abs() < 3.0 * mean_err, "shape {shape}: mean {mean:e}");
        assert!((var - sigma2).abs() < 3.0 * var_err, "shape {shape}: var {var:e}");
        assert!(xs.iter().all(|&x| x >= 0.0));
    }
}

#[test]
fn large_shape_kernel_approaches_a_gaussian() {
    let tau = 1e-6f64;
    let mut previous = f64::INFINITY;
    for shape in [100.0, 1e4] {
        let law = GammaTimeLaw::new(shape * tau, tau).unwrap();
        let sd = law.variance().sqrt();
        let mut dev = 0.0f64;
        for k in -400..=400 {
            let tp = law.mean() + sd * k as f64 / 100.0;
            let normal = (-0.5 * ((tp - law.mean()) / sd).powi(2)).exp() / (sd * (2.0 * PI).sqrt());
            dev = dev.max((gamma_pdf(&law, tp).unwrap() - normal).abs() * sd);
        }
        // leading correction is skewness/6 times a Hermite term of order one
        assert!(dev < 0.5 * law.skewness(), "shape {shape}: {dev}");
        assert!(dev < previous);
        previous = dev;
    }

    // a seeded histogram at t = 100τ has the same shape
    let law = GammaTimeLaw::new(100.0 * tau, tau).unwrap();
    let xs = sample_times(&law, 200_000, 3).unwrap();
    let sd = law.variance().sqrt();
    let inside = xs.iter().filter(|&&x| (x - law.mean()).abs() <= sd).count() as f64 / xs.len() as f64;
    assert!((inside - 0.6827).abs() < 0.01, "{inside}");
}

#[test]
fn vanishing_tau_is_unitary() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let g = common::random_hermitian(&mut rng, 4, OMEGA_R);
    let rho0 = common::random_density(&mut rng, 4);
    for t in [1e-6, 1e-5, 4e-5] {
        let averaged = averaged_propagate(&rho0, &g, &GammaTimeLaw::new(t, 1e-15 * t).unwrap()).unwrap();
        let unitary = evolve_unitary(&rho0, &g, t).unwrap();
        assert!(averaged.matrix().max_abs_diff(unitary.matrix()) < 1e-8);
    }
}

#[test]
fn monte_carlo_matches_closed_form_entrywise() {
    let g = vacuum_doublet(OMEGA_R).unwrap().generator();
    let rho0 = DensityMatrix::basis_state(2, 0).unwrap();
    for (k, t) in [10e-6, 40e-6, 100e-6].into_iter().enumerate() {
        let law = GammaTimeLaw::new(t, TAU_CAVITY).unwrap();
        let mc = averaged_propagate_mc(&rho0, &g, &law, 100_000, 100 + k as u64).unwrap();
        let closed = averaged_propagate(&rho0, &g, &law).unwrap();
        assert!(mc.matrix().max_abs_diff(closed.matrix()) < 5e-3, "t = {t:e}");
    }
}

#[test]
fn eigenbasis_diagonal_states_are_stationary() {
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let g = common::random_hermitian(&mut rng, 4, 3.0);
    let d = spectral_decompose(&g).unwrap();
    let weights = [0.1, 0.2, 0.3, 0.4];
    let rho0 = DensityMatrix::new(d.from_eigenbasis(&ComplexMatrix::from_diagonal(&weights))).unwrap();
    for n in [1, 17, 5000] {
        let law = GammaTimeLaw::new(2.5, 0.1).unwrap();
        let mc = averaged_propagate_mc(&rho0, &g, &law, n, 1).unwrap();
        assert!(mc.matrix().max_abs_diff(rho0.matrix()) < 1e-14, "n = {n}");
    }
}

#[test]
fn generalized_equation_restarts_consistently() {
    let mut rng = ChaCha20Rng::seed_from_u64(21);
    let g = common::random_hermitian(&mut rng, 3, 1.0);
    let rho0 = common::random_pure(&mut rng, 3);
    let (t1, t2, tau) = (1.3, 2.1, 0.25);
    let first = integrate_me_generalized(&rho0, &g, tau, &[0.0, t1]).unwrap();
    let second = integrate_me_generalized(first.last().unwrap(), &g, tau, &[0.0, t2]).unwrap();
    let direct = integrate_me_generalized(&rho0, &g, tau, &[0.0, t1 + t2]).unwrap();
    assert!(second.last().unwrap().matrix().max_abs_diff(direct.last().unwrap().matrix()) < 1e-12);

    let fine = integrate_me_generalized(&rho0, &g, tau, &common::grid(3.0 * tau, 31)).unwrap();
    let closed = averaged_propagate(&rho0, &g, &GammaTimeLaw::new(3.0 * tau, tau).unwrap()).unwrap();
    assert!(fine.last().unwrap().matrix().max_abs_diff(closed.matrix()) < 1e-8);
}

#[test]
fn area_kernel_special_cases() {
    let omega = OMEGA0_ION;
    let tau = TAU_ION;
    let law = PulseAreaLaw::new(tau, tau, omega).unwrap();
    let scale = omega * tau;
    for k in 0..50 {
        let a = scale * k as f64 / 5.0;
        let expected = (-a / scale).exp() / scale;
        assert!((area_pdf(&law, a).unwrap() / expected - 1.0).abs() < 1e-12);
    }
    let law = PulseAreaLaw::new(1e-6, tau, omega).unwrap();
    let (mean, var) = area_moments(&law);
    let norm = integrate(|a| area_pdf(&law, a).unwrap(), 0.0, mean + 40.0 * var.sqrt(), 1e-14, 1e-12).unwrap();
    assert!((norm - 1.0).abs() < 1e-9);
    let shrinking: Vec<f64> =
        [1e-8, 1e-10, 1e-12].iter().map(|&tau| area_moments(&PulseAreaLaw::new(1e-6, tau, omega).unwrap()).1).collect();
    assert!(shrinking.windows(2).all(|w| w[1] < w[0] / 50.0));
    assert!((shrinking[2] / (mean * mean) / 1e-6 - 1.0).abs() < 1e-12);
}

#[test]
fn vacuum_rabi_closed_form_matches_full_jc_evolution() {
    assert!((vacuum_rabi_probability(OMEGA_R, 10e-6) - 1.0).abs() < 1e-15);
    let p = CavityQedParams::new(OMEGA_R, 3).unwrap();
    let h = jc_hamiltonian(&p);
    let rho0 = DensityMatrix::basis_state(p.dim(), excited_index(0)).unwrap();
    for t in common::grid(60e-6, 61) {
        let rho = evolve_unitary(&rho0, &h, t).unwrap();
        assert!((rho.population(ground_index(1)) - vacuum_rabi_probability(OMEGA_R, t)).abs() < 1e-12, "t = {t:e}");
    }
}

#[test]
fn damped_probability_against_averaging() {
    let p40 = damped_rabi_probability(OMEGA_R, TAU_CAVITY, 40e-6);
    assert!((p40 - 0.314_769_177_318_978_1).abs() < 1e-12);

    let g = vacuum_doublet(OMEGA_R).unwrap().generator();
    let rho0 = DensityMatrix::basis_state(2, 0).unwrap();
    let law = GammaTimeLaw::new(40e-6, TAU_CAVITY).unwrap();
    let closed = averaged_propagate(&rho0, &g, &law).unwrap().population(1);
    assert!((closed - p40).abs() < 1e-12);
    let n = 200_000;
    let mc = averaged_propagate_mc(&rho0, &g, &law, n, 40).unwrap().population(1);
    assert!((mc - p40).abs() < 3.0 * (0.125f64 / n as f64).sqrt());

    let tiny = 1e-12 / OMEGA_R;
    for t in common::grid(200e-6, 201) {
        assert!((damped_rabi_probability(OMEGA_R, tiny, t) - vacuum_rabi_probability(OMEGA_R, t)).abs() < 1e-6);
    }
    assert!((damped_rabi_probability(OMEGA_R, TAU_CAVITY, 1.0) - 0.5).abs() < 1e-12);
}

#[test]
fn ion_probability_equals_averaged_doublet() {
    let p = IonTrapParams::from_omega0(OMEGA0_ION, 0.202, 16, 2.0 * PI * 11.2e6).unwrap();
    let rho0 = DensityMatrix::basis_state(2, 0).unwrap();
    for n in [0, 1, 5, 16] {
        let g = ion_doublet(&p, n).unwrap().generator();
        for t in common::grid(100e-6, 26) {
            let averaged = if t == 0.0 {
                1.0
            } else {
                averaged_propagate(&rho0, &g, &GammaTimeLaw::new(t, TAU_ION).unwrap()).unwrap().population(0)
            };
            let closed = ion_probability(n, t, TAU_ION, &p, DecayMode::Exact).unwrap();
            assert!((averaged - closed).abs() < 1e-9, "n = {n}, t = {t:e}");

            let unitary = evolve_unitary(&rho0, &g, t).unwrap().population(0);
            let undamped = ion_probability(n, t, 0.0, &p, DecayMode::Exact).unwrap();
            assert!((unitary - undamped).abs() < 1e-12, "n = {n}, t = {t:e}");
        }
    }
    assert!((ion_probability(0, 1.0, TAU_ION, &p, DecayMode::Exact).unwrap() - 0.5).abs() < 1e-12);
}

/// Linearized standard errors of `[offset, amplitude, γ, ν]` for a damped-cosine fit.
fn fit_standard_errors(times: &[f64], fit: &nondiss::DampedCosineFit64) -> [f64; 4] {
    let s = if fit.sign < 0 { -1.0 } else { 1.0 };
    let a = s * fit.amplitude;
    let mut jtj = [[0.0f64; 4]; 4];
    for &t in times {
        let e = (-fit.gamma * t).exp();
        let (sin, cos) = (fit.nu * t).sin_cos();
        let row = [1.0, e * cos, -t * a * e * cos, -t * a * e * sin];
        for i in 0..4 {
            for j in 0..4 {
                jtj[i][j] += row[i] * row[j];
            }
        }
    }
    // Gauss–Jordan inverse of the 4×4 normal matrix
    let mut inv = [[0.0f64; 4]; 4];
    for (i, r) in inv.iter_mut().enumerate() {
        r[i] = 1.0;
    }
    for c in 0..4 {
        let p = (c..4).max_by(|&x, &y| jtj[x][c].abs().total_cmp(&jtj[y][c].abs())).unwrap();
        jtj.swap(c, p);
        inv.swap(c, p);
        let d = jtj[c][c];
        for j in 0..4 {
            jtj[c][j] /= d;
            inv[c][j] /= d;
        }
        for r in 0..4 {
            if r != c {
                let f = jtj[r][c];
                for j in 0..4 {
                    jtj[r][j] -= f * jtj[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    let dof = (times.len() - 4) as f64;
    let sigma2 = fit.rms_residual.powi(2) * times.len() as f64 / dof;
    std::array::from_fn(|i| (sigma2 * inv[i][i]).sqrt())
}

#[test]
fn fit_of_monte_carlo_trace_agrees_with_closed_form() {
    let g = vacuum_doublet(OMEGA_R).unwrap().generator();
    let rho0 = DensityMatrix::basis_state(2, 0).unwrap();
    let times = common::grid(100e-6, 201);
    let values: Vec<f64> = times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let law = GammaTimeLaw::new(t.max(1e-12), TAU_CAVITY).unwrap();
            averaged_propagate_mc(&rho0, &g, &law, 100_000, 1000 + k as u64).unwrap().population(1)
        })
        .collect();
    let fit = fit_damped_cosine(&TimeSeries::from_columns(&times, &values).unwrap()).unwrap();
    let se = fit_standard_errors(&times, &fit);
    assert!((fit.gamma_std_err / se[2] - 1.0).abs() < 1e-6, "{} vs {}", fit.gamma_std_err, se[2]);
    assert!((fit.nu_std_err / se[3] - 1.0).abs() < 1e-6, "{} vs {}", fit.nu_std_err, se[3]);
    let (gamma, nu) = gamma_nu_exact(OMEGA_R, TAU_CAVITY);
    assert!((fit.gamma - gamma).abs() < 3.0 * fit.gamma_std_err, "gamma {} vs {gamma}, se {}", fit.gamma, se[2]);
    assert!((fit.nu - nu).abs() < 3.0 * fit.nu_std_err, "nu {} vs {nu}, se {}", fit.nu, se[3]);
    assert!(se[2] < 0.05 * gamma);
}
