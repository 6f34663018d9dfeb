//! Vacuum Rabi oscillations of a cavity-QED atom: unitary, Gamma-averaged
//! (closed form and Monte Carlo) and second-order master-equation curves.

use std::f64::consts::TAU;

use nondiss::analysis::{estimate_tau_exact, estimate_tau_small};
use nondiss::averaging::{
    averaged_propagate_mc_with, averaged_propagate_with, integrate_me_second_order, GammaTimeLaw,
};
use nondiss::models::{excited_index, gamma_nu_exact, gamma_small_tau, ground_index, jc_hamiltonian, CavityQedParams};
use nondiss::qcore::{evolve_unitary_with, spectral_decompose, DensityMatrix};
use serde::{Deserialize, Serialize};

use crate::config::{non_negative, overlay_fields, positive, time_grid, Common, Overlay};
use crate::error::CliError;
use crate::output::{Cell, Report, Summary, Table};

const DEFAULT_RABI_KHZ: f64 = 25.0;
const DEFAULT_TAU_S: f64 = 0.5066e-6;
const DEFAULT_T_MAX_US: f64 = 100.0;
const DEFAULT_STEPS: usize = 1000;
const DEFAULT_GAMMA_INV_US: f64 = 40.0;
const DEFAULT_MC_SAMPLES: usize = 10_000;
/// photon-number cutoff of the simulated Jaynes–Cummings ladder
const N_MAX: usize = 1;

#[derive(Debug, Clone, Default, clap::Args, Deserialize)]
#[serde(default)]
pub struct CavityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Vacuum Rabi frequency Ω_R/2π in kHz [default: 25]
    #[arg(long)]
    pub rabi_khz: Option<f64>,
    /// Fluctuation time τ in seconds [default: 5.066e-7]
    #[arg(long)]
    pub tau_s: Option<f64>,
    /// Fluctuation time τ in microseconds
    #[arg(long)]
    pub tau_us: Option<f64>,
    /// End of the time grid in µs [default: 100]
    #[arg(long)]
    pub t_max_us: Option<f64>,
    /// Number of grid intervals [default: 1000]
    #[arg(long)]
    pub steps: Option<usize>,
    /// Take τ from the measured decay time (small-τ inversion) instead of --tau-s
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub estimate_tau: Option<bool>,
    /// Measured decay time γ⁻¹ in µs [default: 40]
    #[arg(long)]
    pub gamma_inv_us: Option<f64>,
}

impl Overlay for CavityArgs {
    fn common(&self) -> &Common {
        &self.common
    }

    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }

    fn overlay_rest(&mut self, mut file: Self) {
        if self.tau_s.is_some() || self.tau_us.is_some() || self.estimate_tau == Some(true) {
            file.tau_s = None;
            file.tau_us = None;
            file.estimate_tau = None;
        }
        overlay_fields!(self, file; rabi_khz, tau_s, tau_us, t_max_us, steps, estimate_tau, gamma_inv_us);
    }
}

#[derive(Debug, Serialize)]
struct Parameters {
    omega_r_rad_per_s: f64,
    tau_s: f64,
    tau_source: &'static str,
    t_max_s: f64,
    steps: usize,
    n_max: usize,
    initial_state: &'static str,
    observable: &'static str,
    mc_samples: usize,
    measured_gamma_per_s: f64,
}

#[derive(Debug, Serialize)]
struct TauEstimates {
    from_gamma_per_s: f64,
    small_tau_s: f64,
    /// `None` when the exact decay law never reaches the measured rate
    exact_s: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Results {
    gamma_exact_per_s: f64,
    gamma_small_tau_per_s: f64,
    nu_rad_per_s: f64,
    nu_over_2omega_r: f64,
    tau_estimates: TauEstimates,
    points: usize,
}

pub fn run(args: &CavityArgs) -> Result<Report, CliError> {
    let rabi_khz = positive("rabi-khz", args.rabi_khz.unwrap_or(DEFAULT_RABI_KHZ))?;
    let omega = TAU * rabi_khz * 1e3;
    let gamma_inv_us = positive("gamma-inv-us", args.gamma_inv_us.unwrap_or(DEFAULT_GAMMA_INV_US))?;
    let measured_gamma = 1e6 / gamma_inv_us;
    let t_max = positive("t-max-us", args.t_max_us.unwrap_or(DEFAULT_T_MAX_US))? / 1e6;
    let grid = time_grid(t_max, args.steps.unwrap_or(DEFAULT_STEPS))?;
    let mc_samples = args.common.mc_samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let seed = args.common.seed();

    let estimate = args.estimate_tau.unwrap_or(false);
    let (tau, tau_source) = match (args.tau_s, args.tau_us, estimate) {
        (Some(_), Some(_), _) => return Err(CliError::input("give at most one of --tau-s and --tau-us")),
        (Some(_), _, true) | (_, Some(_), true) => {
            return Err(CliError::input("--estimate-tau derives τ; do not also pass --tau-s/--tau-us"))
        }
        (_, _, true) => (estimate_tau_small(measured_gamma, omega)?, "estimated"),
        (Some(s), None, false) => (non_negative("tau-s", s)?, "flag"),
        (None, Some(us), false) => (non_negative("tau-us", us)? / 1e6, "flag"),
        (None, None, false) => (DEFAULT_TAU_S, "default"),
    };

    let params = CavityQedParams::new(omega, N_MAX)?;
    let h = jc_hamiltonian(&params);
    let decomposition = spectral_decompose(&h)?;
    let rho0 = DensityMatrix::basis_state(params.dim(), excited_index(0))?;
    let probe = ground_index(1);

    let unitary = grid
        .iter()
        .map(|&t| Ok(evolve_unitary_with(&decomposition, &rho0, t)?.population(probe)))
        .collect::<Result<Vec<f64>, CliError>>()?;
    let closed = if tau == 0.0 {
        unitary.clone()
    } else {
        grid.iter()
            .map(|&t| {
                let law = GammaTimeLaw::new(t, tau)?;
                Ok(averaged_propagate_with(&decomposition, &rho0, &law)?.population(probe))
            })
            .collect::<Result<Vec<f64>, CliError>>()?
    };
    let mc = match mc_samples {
        0 => None,
        _ if tau == 0.0 => Some(unitary.clone()),
        n => Some(
            grid.iter()
                .enumerate()
                .map(|(k, &t)| {
                    let law = GammaTimeLaw::new(t, tau)?;
                    let rho = averaged_propagate_mc_with(&decomposition, &rho0, &law, n, point_seed(seed, k), true)?;
                    Ok(rho.population(probe))
                })
                .collect::<Result<Vec<f64>, CliError>>()?,
        ),
    };
    let me2 = integrate_me_second_order(&rho0, &h, tau, &grid)?.populations(probe);

    let mut header = vec!["t_s", "p_unitary", "p_avg_closed"];
    if mc.is_some() {
        header.push("p_avg_mc");
    }
    header.push("p_me2");
    let mut table = Table::new(header);
    for (k, &t) in grid.iter().enumerate() {
        let mut row = vec![Cell::Real(t), Cell::Real(unitary[k]), Cell::Real(closed[k])];
        if let Some(mc) = &mc {
            row.push(Cell::Real(mc[k]));
        }
        row.push(Cell::Real(me2[k]));
        table.push(row);
    }

    let (gamma, nu) = gamma_nu_exact(omega, tau);
    let results = Results {
        gamma_exact_per_s: gamma,
        gamma_small_tau_per_s: gamma_small_tau(omega, tau),
        nu_rad_per_s: nu,
        nu_over_2omega_r: nu / (2.0 * omega),
        tau_estimates: TauEstimates {
            from_gamma_per_s: measured_gamma,
            small_tau_s: estimate_tau_small(measured_gamma, omega)?,
            exact_s: estimate_tau_exact(measured_gamma, omega).ok(),
        },
        points: grid.len(),
    };
    let parameters = Parameters {
        omega_r_rad_per_s: omega,
        tau_s: tau,
        tau_source,
        t_max_s: t_max,
        steps: grid.len() - 1,
        n_max: N_MAX,
        initial_state: "|e,0>",
        observable: "population of |g,1>",
        mc_samples,
        measured_gamma_per_s: measured_gamma,
    };
    Ok(Report { table: Some(table), summary: Summary::new("cavity", seed, parameters, results).to_json() })
}

/// Seed of the Monte-Carlo average at grid point `k`.
pub fn point_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add(k as u64)
}
