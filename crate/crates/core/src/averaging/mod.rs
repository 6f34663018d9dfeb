//! Averaging unitary evolution over a Gamma-distributed evolution time (or pulse area).

mod kernel;
mod master;
mod propagate;
pub mod quadrature;
mod sampling;

pub use kernel::{
    area_moments, area_pdf, gamma_pdf, kernel_moments, ln_gamma, GammaTimeLaw, KernelMoments, PulseAreaLaw,
};
pub use master::{integrate_me_generalized, integrate_me_second_order, Trajectory};
pub use propagate::{
    area_averaged_propagate, average_over_times, averaged_propagate, averaged_propagate_mc,
    averaged_propagate_mc_serial, averaged_propagate_mc_with, averaged_propagate_with, averaging_factor,
};
pub use sampling::{sample_times, GammaSampler, MC_CHUNK, RNG_ALGORITHM};
