//! The two experiments: Jaynes–Cummings vacuum Rabi oscillations and trapped-ion
//! blue-sideband doublets, with closed-form damped predictions.

mod cavity;
mod doublet;
mod ion;
mod laguerre;
mod rates;

pub use cavity::{excited_index, ground_index, jc_hamiltonian, vacuum_doublet, CavityQedParams};
pub use doublet::DoubletModel;
pub use ion::{
    gamma_n_predicted, ion_doublet, ion_probability, ion_rabi_frequency, ion_rates, DecayMode, IonTrapParams,
};
pub use laguerre::laguerre_assoc;
pub use rates::{damped_rabi_probability, gamma_nu_exact, gamma_small_tau, vacuum_rabi_probability};
