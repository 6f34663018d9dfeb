//! Tabulates the Gamma time kernel, or its pulse-area twin with `--area`.

use std::f64::consts::TAU;

use nondiss::averaging::{area_moments, area_pdf, gamma_pdf, kernel_moments, GammaTimeLaw, PulseAreaLaw};
use serde::{Deserialize, Serialize};

use crate::config::{overlay_fields, positive, Common, Overlay};
use crate::error::CliError;
use crate::output::{Cell, Report, Summary, Table};

const DEFAULT_T_S: f64 = 1e-6;
const DEFAULT_TAU_S: f64 = 1.706e-8;
const DEFAULT_POINTS: usize = 1001;

#[derive(Debug, Clone, Default, clap::Args, Deserialize)]
#[serde(default)]
pub struct KernelArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Laboratory time t in seconds [default: 1e-6]
    #[arg(long)]
    pub t_s: Option<f64>,
    /// Fluctuation time τ in seconds [default: 1.706e-8]
    #[arg(long)]
    pub tau_s: Option<f64>,
    /// Upper end of the abscissa (seconds, or radians of area with --area) [default: t + 10√(tτ) + 10τ]
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Number of abscissae, including 0 [default: 1001]
    #[arg(long)]
    pub points: Option<usize>,
    /// Tabulate the pulse-area density P(t, A) instead of P(t, t')
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub area: Option<bool>,
    /// Mean Rabi frequency Ω/2π in kHz, required with --area
    #[arg(long)]
    pub omega_khz: Option<f64>,
}

impl Overlay for KernelArgs {
    fn common(&self) -> &Common {
        &self.common
    }

    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }

    fn overlay_rest(&mut self, file: Self) {
        overlay_fields!(self, file; t_s, tau_s, x_max, points, area, omega_khz);
    }
}

#[derive(Debug, Serialize)]
struct Parameters {
    t_s: f64,
    tau_s: f64,
    shape: f64,
    variable: &'static str,
    omega_rad_per_s: Option<f64>,
    x_max: f64,
    points: usize,
}

#[derive(Debug, Serialize)]
struct Moments {
    mean: f64,
    variance: f64,
    skewness: f64,
}

#[derive(Debug, Serialize)]
struct Results {
    /// units follow `parameters.variable`
    analytic: Moments,
    quadrature: Moments,
    quadrature_normalization: f64,
    /// `σ(A)/⟨A⟩ = √(τ/t)`, area mode only
    fractional_spread: Option<f64>,
}

pub fn run(args: &KernelArgs) -> Result<Report, CliError> {
    let t = args.t_s.unwrap_or(DEFAULT_T_S);
    if t == 0.0 {
        return Err(CliError::input(
            "--t-s 0: at t = 0 the kernel is a Dirac delta at t' = 0 and has no density to tabulate",
        ));
    }
    let t = positive("t-s", t)?;
    let tau = positive("tau-s", args.tau_s.unwrap_or(DEFAULT_TAU_S))?;
    let law = GammaTimeLaw::new(t, tau)?;
    let points = args.points.unwrap_or(DEFAULT_POINTS);
    if points < 2 {
        return Err(CliError::input("--points must be >= 2"));
    }
    let area = args.area.unwrap_or(false);
    let omega = match (area, args.omega_khz) {
        (true, None) => return Err(CliError::input("--area needs --omega-khz")),
        (true, Some(khz)) => Some(TAU * positive("omega-khz", khz)? * 1e3),
        (false, _) => None,
    };
    // x is t' in seconds, or the area A = Ωt'
    let unit = omega.unwrap_or(1.0);
    let default_x_max = (t + 10.0 * (t * tau).sqrt() + 10.0 * tau) * unit;
    let x_max = positive("x-max", args.x_max.unwrap_or(default_x_max))?;

    let area_law = omega.map(|w| PulseAreaLaw::new(t, tau, w)).transpose()?;
    let mut table = Table::new(["x", "pdf"]);
    for k in 0..points {
        let x = x_max * k as f64 / (points - 1) as f64;
        let pdf = match &area_law {
            Some(a) => area_pdf(a, x)?,
            None => gamma_pdf(&law, x)?,
        };
        table.push(vec![Cell::Real(x), Cell::Real(pdf)]);
    }

    let q = kernel_moments(&law)?;
    let analytic = match &area_law {
        Some(a) => {
            let (mean, variance) = area_moments(a);
            Moments { mean, variance, skewness: law.skewness() }
        }
        None => Moments { mean: law.mean(), variance: law.variance(), skewness: law.skewness() },
    };
    let results = Results {
        analytic,
        quadrature: Moments { mean: q.mean * unit, variance: q.variance * unit * unit, skewness: q.skewness },
        quadrature_normalization: q.normalization,
        fractional_spread: area_law.map(|a| a.fractional_spread()),
    };
    let parameters = Parameters {
        t_s: t,
        tau_s: tau,
        shape: law.shape(),
        variable: if area { "pulse area A (rad)" } else { "evolution time t' (s)" },
        omega_rad_per_s: omega,
        x_max,
        points,
    };
    Ok(Report { table: Some(table), summary: Summary::new("kernel", args.common.seed(), parameters, results).to_json() })
}
