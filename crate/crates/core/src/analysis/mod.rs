//! Parameter extraction: damped-cosine fits, power-law fits and τ estimators.

mod fit;
mod power_law;
mod tau;

pub use fit::{fit_damped_cosine, DampedCosineFit, TimeSeries};
pub use power_law::{fit_power_law, PowerLawFit};
pub use tau::{estimate_tau_exact, estimate_tau_small, transit_time_spread};
