//! Sphere–plate force from the proximity force approximation.

use crate::constants::{PhysicalConstants, CODATA_2018};
use crate::dispersion::MaterialModel;
use crate::error::{require_positive, Result};
use crate::lifshitz::{free_energy, QuadratureSettings, ThermalGapConfig};
use crate::thermal::TemperaturePair;

/// Sphere of radius `radius` (m) at minimum distance `gap` (m) from a plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePlateConfig {
    radius: f64,
    gap: f64,
}

impl SpherePlateConfig {
    pub fn new(radius: f64, gap: f64) -> Result<Self> {
        require_positive("R", radius)?;
        require_positive("a", gap)?;
        Ok(Self { radius, gap })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// True when `R < 100 a`; the proximity approximation is then doubtful.
    pub fn pfa_advisory(&self) -> bool {
        self.radius < 100.0 * self.gap
    }
}

/// `𝓕_ps = 2πR F(a)` in N; negative means attraction.
pub fn pfa_force(
    sp: &SpherePlateConfig,
    temperature: f64,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<f64> {
    pfa_force_with(sp, temperature, model, quad, CODATA_2018)
}

pub fn pfa_force_with(
    sp: &SpherePlateConfig,
    temperature: f64,
    model: &MaterialModel,
    quad: &QuadratureSettings,
    constants: PhysicalConstants,
) -> Result<f64> {
    let cfg = ThermalGapConfig::with_constants(temperature, sp.gap, constants)?;
    Ok(2.0 * std::f64::consts::PI * sp.radius * free_energy(&cfg, model, quad)?)
}

/// `(1/R)[𝓕_ps(T_high) − 𝓕_ps(T_low)] = 2π[F(a, T_high) − F(a, T_low)]` in
/// N/m. The radius cancels and is never multiplied in.
pub fn pfa_force_difference(
    sp: &SpherePlateConfig,
    model: &MaterialModel,
    temps: TemperaturePair,
    quad: &QuadratureSettings,
) -> Result<f64> {
    pfa_force_difference_with(sp, model, temps, quad, CODATA_2018)
}

pub fn pfa_force_difference_with(
    sp: &SpherePlateConfig,
    model: &MaterialModel,
    temps: TemperaturePair,
    quad: &QuadratureSettings,
    constants: PhysicalConstants,
) -> Result<f64> {
    let high = ThermalGapConfig::with_constants(temps.high, sp.gap, constants)?;
    let low = ThermalGapConfig::with_constants(temps.low, sp.gap, constants)?;
    let (f_high, f_low) = rayon::join(|| free_energy(&high, model, quad), || free_energy(&low, model, quad));
    Ok(2.0 * std::f64::consts::PI * (f_high? - f_low?))
}
