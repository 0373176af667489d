//! Partition functions and thermodynamics: closed forms on the commuting
//! slice, the spectral ensemble, and the perturbative propagator.

pub mod closed_form;
pub mod dyson;
pub mod pressure;
pub mod report;
pub mod spectral;
pub mod toy;

pub use closed_form::{
    closed_form_discrepancies, displayed_closed_form, thermo_closed_form, z1_derivatives, z1_formula,
    z1_printed_complex, z1_second_order_complex, Branch, DisplayedThermo, EnergySliceParams,
    Z1Derivatives,
};
pub use dyson::{bloch_propagator, dyson_second_order, DysonResult};
pub use pressure::{displayed_pressure, pressure, pressure_discrepancy, VolumeFn, VolumeModel};
pub use report::{significant, Discrepancy, Provenance, ThermoReport};
pub use spectral::{energy_variance, relative_rms, thermo_spectral, z_spectral, Level, SpectralEnsemble};
pub use toy::{build_toy_hamiltonian, ToyModelParams};
