//! Blue-sideband Rabi oscillations of a trapped ion prepared in Fock state `n`.

use std::f64::consts::TAU;

use nondiss::analysis::{estimate_tau_exact, estimate_tau_small, fit_power_law, PowerLawFit};
use nondiss::averaging::{averaged_propagate_mc_with, GammaTimeLaw};
use nondiss::models::{ion_doublet, ion_probability, ion_rabi_frequency, ion_rates, DecayMode, IonTrapParams};
use nondiss::qcore::{evolve_unitary_with, spectral_decompose, DensityMatrix};
use serde::{Deserialize, Serialize};

use crate::cavity::point_seed;
use crate::config::{non_negative, overlay_fields, positive, time_grid, Common, Overlay};
use crate::error::CliError;
use crate::output::{Cell, Report, Summary, Table};

const DEFAULT_OMEGA0_KHZ: f64 = 94.0;
const DEFAULT_ETA: f64 = 0.202;
const DEFAULT_N_MAX: usize = 16;
const DEFAULT_GAMMA0_PER_S: f64 = 11.9e3;
const DEFAULT_TRAP_MHZ: f64 = 11.2;
const DEFAULT_T_MAX_US: f64 = 100.0;
const DEFAULT_STEPS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    SmallTau,
}

impl From<Mode> for DecayMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => DecayMode::Exact,
            Mode::SmallTau => DecayMode::SmallTau,
        }
    }
}

#[derive(Debug, Clone, Default, clap::Args, Deserialize)]
#[serde(default)]
pub struct IonArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Rabi frequency Ω_0/2π of the n = 0 doublet in kHz [default: 94]
    #[arg(long)]
    pub omega0_khz: Option<f64>,
    /// Bare Rabi parameter Ω/2π in kHz, instead of --omega0-khz
    #[arg(long)]
    pub omega_khz: Option<f64>,
    /// Lamb–Dicke parameter η [default: 0.202]
    #[arg(long)]
    pub eta: Option<f64>,
    /// Highest initial Fock state [default: 16]
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Fluctuation time τ in seconds [default: from --gamma0-per-s]
    #[arg(long)]
    pub tau_s: Option<f64>,
    /// Measured n = 0 decay rate used to infer τ = γ_0/(2Ω_0²) [default: 11900]
    #[arg(long)]
    pub gamma0_per_s: Option<f64>,
    /// Decay law of each trace [default: exact]
    #[arg(long, value_enum)]
    pub decay_mode: Option<Mode>,
    /// Axial trap frequency ω_z/2π in MHz [default: 11.2]
    #[arg(long)]
    pub trap_mhz: Option<f64>,
    /// End of the time grid in µs [default: 100]
    #[arg(long)]
    pub t_max_us: Option<f64>,
    /// Number of grid intervals per trace [default: 2000]
    #[arg(long)]
    pub steps: Option<usize>,
}

impl Overlay for IonArgs {
    fn common(&self) -> &Common {
        &self.common
    }

    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }

    fn overlay_rest(&mut self, mut file: Self) {
        if self.omega0_khz.is_some() || self.omega_khz.is_some() {
            file.omega0_khz = None;
            file.omega_khz = None;
        }
        overlay_fields!(self, file;
            omega0_khz, omega_khz, eta, n_max, tau_s, gamma0_per_s, decay_mode, trap_mhz, t_max_us, steps);
    }
}

#[derive(Debug, Serialize)]
struct Parameters {
    omega_rad_per_s: f64,
    omega0_rad_per_s: f64,
    eta: f64,
    n_max: usize,
    omega_z_rad_per_s: f64,
    tau_s: f64,
    tau_source: &'static str,
    decay_mode: Mode,
    t_max_s: f64,
    steps: usize,
    mc_samples: usize,
}

#[derive(Debug, Serialize)]
struct Level {
    n: usize,
    omega_n_rad_per_s: f64,
    omega_n_over_omega0: f64,
    gamma_n_per_s: f64,
    nu_n_rad_per_s: f64,
}

#[derive(Debug, Serialize)]
struct PowerLaw {
    prefactor: f64,
    exponent: f64,
    max_rel_dev: f64,
}

impl From<PowerLawFit<f64>> for PowerLaw {
    fn from(f: PowerLawFit<f64>) -> Self {
        Self { prefactor: f.prefactor, exponent: f.exponent, max_rel_dev: f.max_rel_dev }
    }
}

#[derive(Debug, Serialize)]
struct Results {
    levels: Vec<Level>,
    /// `Ω_n ≈ A (n+1)^p`; needs at least three levels
    omega_power_law: Option<PowerLaw>,
    /// `γ_n ≈ A (n+1)^p`; needs at least three levels and τ > 0
    gamma_power_law: Option<PowerLaw>,
    gamma0_per_s: f64,
    tau_from_gamma0_small_s: f64,
    tau_from_gamma0_exact_s: Option<f64>,
}

pub fn run(args: &IonArgs) -> Result<Report, CliError> {
    let eta = args.eta.unwrap_or(DEFAULT_ETA);
    let n_max = args.n_max.unwrap_or(DEFAULT_N_MAX);
    let omega_z = TAU * positive("trap-mhz", args.trap_mhz.unwrap_or(DEFAULT_TRAP_MHZ))? * 1e6;
    let params = match (args.omega0_khz, args.omega_khz) {
        (Some(_), Some(_)) => return Err(CliError::input("give at most one of --omega0-khz and --omega-khz")),
        (None, Some(khz)) => IonTrapParams::blue_sideband(TAU * positive("omega-khz", khz)? * 1e3, eta, n_max, omega_z)?,
        (w0, None) => {
            let khz = positive("omega0-khz", w0.unwrap_or(DEFAULT_OMEGA0_KHZ))?;
            IonTrapParams::from_omega0(TAU * khz * 1e3, eta, n_max, omega_z)?
        }
    };
    let omega0 = ion_rabi_frequency(&params, 0)?;
    let gamma0 = positive("gamma0-per-s", args.gamma0_per_s.unwrap_or(DEFAULT_GAMMA0_PER_S))?;
    let (tau, tau_source) = match args.tau_s {
        Some(t) => (non_negative("tau-s", t)?, "flag"),
        None => (estimate_tau_small(gamma0, omega0)?, "estimated"),
    };
    let mode = args.decay_mode.unwrap_or(Mode::Exact);
    let t_max = positive("t-max-us", args.t_max_us.unwrap_or(DEFAULT_T_MAX_US))? / 1e6;
    let grid = time_grid(t_max, args.steps.unwrap_or(DEFAULT_STEPS))?;
    let mc_samples = args.common.mc_samples.unwrap_or(0);
    let seed = args.common.seed();

    let mut header = vec!["n", "t_s", "p_down"];
    if mc_samples > 0 {
        header.push("p_down_mc");
    }
    let mut table = Table::new(header);
    let rho0 = DensityMatrix::basis_state(2, 0)?;
    let mut levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let rabi = ion_rabi_frequency(&params, n)?;
        let (gamma, nu) = ion_rates(&params, n, tau, mode.into())?;
        levels.push(Level {
            n,
            omega_n_rad_per_s: rabi,
            omega_n_over_omega0: rabi / omega0,
            gamma_n_per_s: gamma,
            nu_n_rad_per_s: nu,
        });
        let decomposition = spectral_decompose(&ion_doublet(&params, n)?.generator())?;
        for (k, &t) in grid.iter().enumerate() {
            let mut row = vec![Cell::Int(n as u64), Cell::Real(t), Cell::Real(ion_probability(n, t, tau, &params, mode.into())?)];
            if mc_samples > 0 {
                let rho = if tau == 0.0 {
                    evolve_unitary_with(&decomposition, &rho0, t)?
                } else {
                    let law = GammaTimeLaw::new(t, tau)?;
                    averaged_propagate_mc_with(&decomposition, &rho0, &law, mc_samples, point_seed(seed, n * grid.len() + k), true)?
                };
                row.push(Cell::Real(rho.population(0)));
            }
            table.push(row);
        }
    }

    let pairs = |f: fn(&Level) -> f64| -> Vec<(u64, f64)> { levels.iter().map(|l| (l.n as u64 + 1, f(l))).collect() };
    let omega_power_law = if levels.len() >= 3 { Some(fit_power_law(&pairs(|l| l.omega_n_rad_per_s))?.into()) } else { None };
    let gamma_power_law = if levels.len() >= 3 && tau > 0.0 {
        Some(fit_power_law(&pairs(|l| l.gamma_n_per_s))?.into())
    } else {
        None
    };

    let results = Results {
        gamma0_per_s: levels[0].gamma_n_per_s,
        levels,
        omega_power_law,
        gamma_power_law,
        tau_from_gamma0_small_s: estimate_tau_small(gamma0, omega0)?,
        tau_from_gamma0_exact_s: estimate_tau_exact(gamma0, omega0).ok(),
    };
    let parameters = Parameters {
        omega_rad_per_s: params.omega,
        omega0_rad_per_s: omega0,
        eta,
        n_max,
        omega_z_rad_per_s: omega_z,
        tau_s: tau,
        tau_source,
        decay_mode: mode,
        t_max_s: t_max,
        steps: grid.len() - 1,
        mc_samples,
    };
    Ok(Report { table: Some(table), summary: Summary::new("ion", seed, parameters, results).to_json() })
}
