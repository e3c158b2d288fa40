//! Finite-temperature Casimir interaction between real-metal plates.
//!
//! The crate evaluates the Lifshitz pressure and free energy as Matsubara
//! series over imaginary frequencies, for Drude, plasma, ideal and
//! tabulated permittivities. On top of that engine it provides the
//! temperature-difference observables, the low-temperature free-energy law,
//! the sphere–plate force in the proximity approximation, and the
//! surface-impedance form of the TE reflection coefficient.
//!
//! Inputs and outputs are SI (m, K, Pa, J/m², N); material parameters are
//! in eV.

// `!(x >= lo)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dispersion;
pub mod error;
pub mod geometry;
pub mod lifshitz;
pub mod quadrature;
pub mod summation;
pub mod thermal;

pub use constants::{PhysicalConstants, CODATA_2018, CONSTANTS_VERSION};
pub use dispersion::{DrudeParams, MaterialModel, PermittivityTable, PlasmaParams, RelaxationModel, ZeroModeClass};
pub use error::{CasimirError, Result};
pub use geometry::{pfa_force, pfa_force_difference, SpherePlateConfig};
pub use lifshitz::{
    free_energy, total_pressure, ModeContribution, ModeSeries, PressureResult, QuadratureSettings, ReflectionPair,
    ThermalGapConfig,
};
pub use thermal::{DifferenceResult, QuadraticFit, TemperaturePair};
