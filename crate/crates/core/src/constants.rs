//! Physical constants and unit conversions.
//!
//! All external quantities are SI except material parameters, which are
//! given in eV and converted to angular frequency through the reduced Planck
//! constant.

/// Label of the default constant set, embedded in output metadata.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// Apéry's constant, the Riemann zeta function at 3.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// A self-consistent set of fundamental constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Boltzmann constant (J/K).
    pub k_b: f64,
    /// One electron volt (J).
    pub electron_volt: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    c: 2.997_924_58e8,
    k_b: 1.380_649e-23,
    electron_volt: 1.602_176_634e-19,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl PhysicalConstants {
    /// Angular frequency (rad/s) of a photon with energy `ev`.
    pub fn ev_to_rad_per_s(&self, ev: f64) -> f64 {
        ev * (self.electron_volt / self.hbar)
    }

    pub fn rad_per_s_to_ev(&self, omega: f64) -> f64 {
        omega * (self.hbar / self.electron_volt)
    }

    /// ħc in J m.
    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }

    /// Thermal energy in eV.
    pub fn kelvin_to_ev(&self, temperature: f64) -> f64 {
        self.k_b * temperature / self.electron_volt
    }
}
