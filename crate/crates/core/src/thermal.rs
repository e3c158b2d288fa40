//! Temperature-difference observables and low-temperature behaviour.

use rayon::prelude::*;

use crate::constants::{PhysicalConstants, CODATA_2018};
use crate::dispersion::{DrudeParams, MaterialModel};
use crate::error::{require_positive, CasimirError, Result};
use crate::lifshitz::{
    free_energy, spectral_free_energy, te_mode_function, total_pressure, QuadratureSettings, ThermalGapConfig,
};
use crate::quadrature::{integrate, Tolerance};
use crate::summation::{compensated_sum, NeumaierSum};

/// The two laboratory temperatures compared by the difference observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperaturePair {
    pub low: f64,
    pub high: f64,
}

impl Default for TemperaturePair {
    fn default() -> Self {
        Self {
            low: 300.0,
            high: 350.0,
        }
    }
}

impl TemperaturePair {
    pub fn new(low: f64, high: f64) -> Result<Self> {
        require_positive("T_low", low)?;
        require_positive("T_high", high)?;
        Ok(Self { low, high })
    }

    pub fn swapped(self) -> Self {
        Self {
            low: self.high,
            high: self.low,
        }
    }
}

/// A difference of magnitudes, `|raw_low| − |raw_high|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceResult {
    pub gap: f64,
    pub t_low: f64,
    pub t_high: f64,
    pub delta: f64,
    pub raw_low: f64,
    pub raw_high: f64,
}

impl DifferenceResult {
    fn new(gap: f64, temps: TemperaturePair, raw_low: f64, raw_high: f64) -> Self {
        Self {
            gap,
            t_low: temps.low,
            t_high: temps.high,
            delta: raw_low.abs() - raw_high.abs(),
            raw_low,
            raw_high,
        }
    }
}

fn at_both<F>(gap: f64, temps: TemperaturePair, constants: PhysicalConstants, f: F) -> Result<DifferenceResult>
where
    F: Fn(&ThermalGapConfig) -> Result<f64> + Sync,
{
    let low = ThermalGapConfig::with_constants(temps.low, gap, constants)?;
    let high = ThermalGapConfig::with_constants(temps.high, gap, constants)?;
    let (raw_low, raw_high) = rayon::join(|| f(&low), || f(&high));
    Ok(DifferenceResult::new(gap, temps, raw_low?, raw_high?))
}

/// Pressure difference `|𝓕(T_low)| − |𝓕(T_high)|` (Pa) at gap `a` (m).
pub fn pressure_difference(
    gap: f64,
    model: &MaterialModel,
    temps: TemperaturePair,
    quad: &QuadratureSettings,
) -> Result<DifferenceResult> {
    pressure_difference_with(gap, model, temps, quad, CODATA_2018)
}

pub fn pressure_difference_with(
    gap: f64,
    model: &MaterialModel,
    temps: TemperaturePair,
    quad: &QuadratureSettings,
    constants: PhysicalConstants,
) -> Result<DifferenceResult> {
    at_both(gap, temps, constants, |cfg| Ok(total_pressure(cfg, model, quad)?.total))
}

/// Free-energy difference `|F(T_low)| − |F(T_high)|` (J/m²).
pub fn free_energy_difference(
    gap: f64,
    model: &MaterialModel,
    temps: TemperaturePair,
    quad: &QuadratureSettings,
) -> Result<DifferenceResult> {
    free_energy_difference_with(gap, model, temps, quad, CODATA_2018)
}

pub fn free_energy_difference_with(
    gap: f64,
    model: &MaterialModel,
    temps: TemperaturePair,
    quad: &QuadratureSettings,
    constants: PhysicalConstants,
) -> Result<DifferenceResult> {
    at_both(gap, temps, constants, |cfg| free_energy(cfg, model, quad))
}

/// Gap (m) where the pressure difference changes sign, by bisection to
/// 1e-3 μm inside `bracket = (lo, hi)`.
pub fn sign_change_gap(
    model: &MaterialModel,
    temps: TemperaturePair,
    bracket: (f64, f64),
    quad: &QuadratureSettings,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    require_positive("bracket lower end", lo)?;
    require_positive("bracket upper end", hi)?;
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let delta = |a: f64| pressure_difference(a, model, temps, quad).map(|d| d.delta);
    let mut f_lo = delta(lo)?;
    let f_hi = delta(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(CasimirError::Bracket { lo, hi });
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        let f_mid = delta(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Heuristic index of the dominant Matsubara mode, `m ≈ 1/(2π aT)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominantMode {
    pub estimate: f64,
    pub mode: u64,
}

pub fn dominant_mode(cfg: &ThermalGapConfig) -> DominantMode {
    let estimate = 1.0 / cfg.gamma();
    DominantMode {
        estimate,
        mode: estimate.round() as u64,
    }
}

/// Ideal-metal pressure from the low-temperature closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPressure {
    /// Pa.
    pub value: f64,
    /// The reduced product `aT` (natural units).
    pub reduced_gap_temperature: f64,
    /// False when `aT ≥ 0.2`, where the expansion is no longer reliable.
    pub applicable: bool,
}

/// `−(π² ħc/(240 a⁴)) [1 + (1/3)(2aT)⁴]`, with `aT` in natural units.
/// `temperature = 0` gives the zero-temperature pressure exactly.
pub fn ideal_pressure_low_temperature(
    gap: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<IdealPressure> {
    require_positive("a", gap)?;
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(CasimirError::Domain {
            quantity: "T",
            value: temperature,
            reason: "must be finite and non-negative",
        });
    }
    let at = gap * constants.k_b * temperature / constants.hbar_c();
    let base = -std::f64::consts::PI.powi(2) * constants.hbar_c() / (240.0 * gap.powi(4));
    Ok(IdealPressure {
        value: base * (1.0 + (2.0 * at).powi(4) / 3.0),
        reduced_gap_temperature: at,
        applicable: at < 0.2,
    })
}

/// Low-temperature free energy split as `F(T) = F₀ + ΔF(T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTemperatureFreeEnergy {
    pub temperature: f64,
    /// J/m².
    pub zero_temperature: f64,
    /// J/m².
    pub thermal_shift: f64,
}

impl LowTemperatureFreeEnergy {
    pub fn total(&self) -> f64 {
        self.zero_temperature + self.thermal_shift
    }
}

/// Number of exact Matsubara cells used before the Euler–Maclaurin tail.
pub const LOW_T_DIRECT_CELLS: usize = 1000;

fn low_t_quadrature() -> QuadratureSettings {
    QuadratureSettings::new(1e-13, 40.0, 500).expect("valid settings")
}

/// `g(x)` with `x = ζa/c`, the per-frequency free-energy integral.
fn spectral_in_reduced(
    x: f64,
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<f64> {
    let zeta = x * cfg.constants().c / cfg.gap();
    spectral_free_energy(zeta, cfg, model, quad)
}

/// Zero-temperature free energy `(ħc/(4π² a³)) ∫₀^∞ g(x) dx` (J/m²).
///
/// `cfg` supplies the gap and the temperature at which ε is evaluated.
pub fn zero_temperature_free_energy(cfg: &ThermalGapConfig, model: &MaterialModel) -> Result<f64> {
    let quad = low_t_quadrature();
    let err = std::cell::Cell::new(None);
    let g = |x: f64| match spectral_in_reduced(x, cfg, model, &quad) {
        Ok(v) => v,
        Err(e) => {
            err.set(Some(e));
            0.0
        }
    };
    // split at the crossover-scale points so the adaptive rule starts well
    let breaks = [0.0, 1e-6, 1e-4, 1e-2, 1.0, 40.0];
    let mut acc = NeumaierSum::new();
    for w in breaks.windows(2) {
        acc.add(integrate(g, w[0], w[1], Tolerance::relative(1e-12, 500))?.value);
        if let Some(e) = err.take() {
            return Err(e);
        }
    }
    let a = cfg.gap();
    Ok(cfg.constants().hbar_c() / (4.0 * std::f64::consts::PI.powi(2) * a.powi(3)) * acc.value())
}

/// Thermal shift `ΔF(T) = F(T) − F(0)` at low temperature (J/m²).
///
/// With `x_m = mγ`, `F(T) = (ħcγ/(4π²a³)) Σ'_m g(x_m)` and
/// `F(0) = (ħc/(4π²a³)) ∫₀^∞ g`. The first `cells` intervals of width γ are
/// handled exactly as trapezoid-minus-integral differences; beyond
/// `L = cells·γ` the Euler–Maclaurin remainder `−(γ/12) g'(L)` closes the
/// sum. This reaches temperatures where the plain series would need
/// millions of modes.
pub fn thermal_free_energy_shift(cfg: &ThermalGapConfig, model: &MaterialModel, cells: usize) -> Result<f64> {
    if cells < 10 {
        return Err(CasimirError::Domain {
            quantity: "cells",
            value: cells as f64,
            reason: "at least 10 direct cells are required",
        });
    }
    let quad = low_t_quadrature();
    let gamma = cfg.gamma();
    let g = |x: f64| spectral_in_reduced(x, cfg, model, &quad);

    let nodes: Vec<f64> = (0..=cells)
        .into_par_iter()
        .map(|m| g(m as f64 * gamma))
        .collect::<Result<_>>()?;
    let defects: Vec<f64> = (0..cells)
        .into_par_iter()
        .map(|m| {
            let lo = m as f64 * gamma;
            let hi = (m + 1) as f64 * gamma;
            let err = std::sync::Mutex::new(None);
            let integral = integrate(
                |x| match g(x) {
                    Ok(v) => v,
                    Err(e) => {
                        *err.lock().expect("poisoned") = Some(e);
                        0.0
                    }
                },
                lo,
                hi,
                Tolerance::relative(5e-14, 200),
            )?;
            if let Some(e) = err.into_inner().expect("poisoned") {
                return Err(e);
            }
            Ok(0.5 * gamma * (nodes[m] + nodes[m + 1]) - integral.value)
        })
        .collect::<Result<_>>()?;

    let end = cells as f64 * gamma;
    let h = 0.05 * end;
    let d = [g(end - 2.0 * h)?, g(end - h)?, g(end + h)?, g(end + 2.0 * h)?];
    let slope = (d[0] - 8.0 * d[1] + 8.0 * d[2] - d[3]) / (12.0 * h);

    let bracket = compensated_sum(defects) / gamma - gamma * slope / 12.0;
    let a = cfg.gap();
    Ok(cfg.constants().hbar_c() * gamma / (4.0 * std::f64::consts::PI.powi(2) * a.powi(3)) * bracket)
}

/// `F₀ + ΔF(T)` for each temperature, sharing one `F₀`.
pub fn free_energy_low_temperature(
    gap: f64,
    model: &MaterialModel,
    temperatures: &[f64],
    constants: &PhysicalConstants,
) -> Result<Vec<LowTemperatureFreeEnergy>> {
    let first = *temperatures.first().ok_or(CasimirError::Domain {
        quantity: "temperature count",
        value: 0.0,
        reason: "needs at least one temperature",
    })?;
    let f0 = zero_temperature_free_energy(&ThermalGapConfig::with_constants(first, gap, *constants)?, model)?;
    temperatures
        .iter()
        .map(|&t| {
            let cfg = ThermalGapConfig::with_constants(t, gap, *constants)?;
            Ok(LowTemperatureFreeEnergy {
                temperature: t,
                zero_temperature: f0,
                thermal_shift: thermal_free_energy_shift(&cfg, model, LOW_T_DIRECT_CELLS)?,
            })
        })
        .collect()
}

/// Temperature at which the first Matsubara frequency reaches the TE
/// crossover `ζ_c = ν c²/(ω_p² a²)`, where `ζ²(ε − 1)` becomes comparable
/// to `c²/a²`. The quadratic law holds far below it.
pub fn te_crossover_temperature(gap: f64, drude: &DrudeParams, constants: &PhysicalConstants) -> Result<f64> {
    require_positive("a", gap)?;
    let nu = drude.relaxation().reference_ev() * constants.ev_to_rad_per_s(1.0);
    let wp = drude.plasma_frequency();
    let zeta_c = nu * constants.c * constants.c / (wp * wp * gap * gap);
    Ok(constants.hbar * zeta_c / (2.0 * std::f64::consts::PI * constants.k_b))
}

/// Default fit grid: five temperatures spanning `[2, 10] × 10⁻⁴` of the
/// TE crossover temperature.
pub fn low_temperature_grid(gap: f64, drude: &DrudeParams, constants: &PhysicalConstants) -> Result<Vec<f64>> {
    let tc = te_crossover_temperature(gap, drude, constants)?;
    Ok((0..5).map(|i| tc * (2e-4 + 2e-4 * i as f64)).collect())
}

/// Largest acceptable RMS residual of the quadratic fit, relative to the
/// spread of the fitted values.
pub const FIT_RESIDUAL_THRESHOLD: f64 = 1e-3;

/// Result of fitting `F(T) = F₀ + c T²`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFit {
    /// J/m².
    pub f0: f64,
    /// Coefficient in J/(m² K²).
    pub coeff_si: f64,
    /// Coefficient in eV, with T measured as an energy and F in natural
    /// units (energy³).
    pub coeff_ev: f64,
    /// RMS residual relative to the spread of the fitted values.
    pub residual: f64,
    pub samples: Vec<LowTemperatureFreeEnergy>,
}

/// Least-squares fit of the low-temperature free energy to `F₀ + c T²`.
///
/// Fails when fewer than five temperatures are given or when the residual
/// shows the data are not quadratic in T.
pub fn low_temperature_quadratic_fit(
    gap: f64,
    model: &MaterialModel,
    temperatures: &[f64],
    constants: &PhysicalConstants,
) -> Result<QuadraticFit> {
    if temperatures.len() < 5 {
        return Err(CasimirError::Domain {
            quantity: "temperature count",
            value: temperatures.len() as f64,
            reason: "the quadratic fit needs at least 5 temperatures",
        });
    }
    let samples = free_energy_low_temperature(gap, model, temperatures, constants)?;
    // fit the shift; F₀ is common to all samples
    let xs: Vec<f64> = samples.iter().map(|s| s.temperature * s.temperature).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.thermal_shift).collect();
    let (intercept, slope) = linear_least_squares(&xs, &ys);
    let n = xs.len() as f64;
    let rms = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let spread =
        ys.iter().copied().fold(f64::NEG_INFINITY, f64::max) - ys.iter().copied().fold(f64::INFINITY, f64::min);
    let residual = if spread > 0.0 { rms / spread } else { f64::INFINITY };
    if !(residual < FIT_RESIDUAL_THRESHOLD) {
        return Err(CasimirError::Fit {
            residual,
            threshold: FIT_RESIDUAL_THRESHOLD,
        });
    }
    // F[J/m²] = c_nat[eV] (k_B T)² / (ħc)² with energies in J
    let coeff_ev = slope * constants.hbar_c().powi(2) / (constants.k_b * constants.k_b) / constants.electron_volt;
    Ok(QuadraticFit {
        f0: samples[0].zero_temperature + intercept,
        coeff_si: slope,
        coeff_ev,
        residual,
        samples,
    })
}

/// The predicted coefficient `ω_p² (2 ln 2 − 1)/(48 ν)` in eV.
pub fn quadratic_coefficient_ev(omega_p_ev: f64, nu_ev: f64) -> f64 {
    omega_p_ev * omega_p_ev * (2.0 * std::f64::consts::LN_2 - 1.0) / (48.0 * nu_ev)
}

/// Straight-line fit of the TE mode function over a window of reduced
/// frequencies `x = ζa/c`, extrapolated back to `ζ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TeExtrapolation {
    pub intercept: f64,
    /// Per unit `x`.
    pub slope: f64,
    /// `(x, f)` pairs used by the fit.
    pub samples: Vec<(f64, f64)>,
}

/// Fits `f(ζ)` linearly on `n` evenly spaced points of `x = ζa/c` in
/// `window` and returns the `ζ = 0` intercept. The intercept is what a
/// smooth extrapolation from finite frequencies would assign to the TE
/// zero mode.
pub fn te_linear_extrapolation(
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    window: (f64, f64),
    n: usize,
    quad: &QuadratureSettings,
) -> Result<TeExtrapolation> {
    let (lo, hi) = window;
    require_positive("window start", lo)?;
    if !(hi > lo) || n < 2 {
        return Err(CasimirError::Domain {
            quantity: "window end",
            value: hi,
            reason: "needs hi > lo and at least two points",
        });
    }
    let c_over_a = cfg.constants().c / cfg.gap();
    let samples = (0..n)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            Ok((x, te_mode_function(x * c_over_a, cfg, model, quad)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let (intercept, slope) = linear_least_squares(&xs, &ys);
    Ok(TeExtrapolation {
        intercept,
        slope,
        samples,
    })
}

fn linear_least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gold() -> MaterialModel {
        MaterialModel::Drude(DrudeParams::gold())
    }

    #[test]
    fn te_extrapolation_misses_the_drude_zero_mode() {
        let cfg = ThermalGapConfig::new(300.0, 1e-6).unwrap();
        let quad = QuadratureSettings::default();
        let ext = te_linear_extrapolation(&cfg, &gold(), (0.25, 0.5), 11, &quad).unwrap();
        assert!((ext.intercept.abs() / 0.30 - 1.0).abs() < 0.1, "{}", ext.intercept);
        assert_eq!(te_mode_function(0.0, &cfg, &gold(), &quad).unwrap(), 0.0);
        assert!(te_linear_extrapolation(&cfg, &gold(), (0.5, 0.25), 11, &quad).is_err());
    }

    #[test]
    fn equal_temperatures_give_zero() {
        let quad = QuadratureSettings::default();
        let same = TemperaturePair::new(300.0, 300.0).unwrap();
        assert_eq!(pressure_difference(1e-6, &gold(), same, &quad).unwrap().delta, 0.0);
        assert_eq!(free_energy_difference(1e-6, &gold(), same, &quad).unwrap().delta, 0.0);
    }

    #[test]
    fn swapping_temperatures_negates() {
        let quad = QuadratureSettings::default();
        let t = TemperaturePair::default();
        let d = pressure_difference(0.8e-6, &gold(), t, &quad).unwrap();
        let s = pressure_difference(0.8e-6, &gold(), t.swapped(), &quad).unwrap();
        assert_eq!(d.delta, -s.delta);
        assert_eq!(d.delta, d.raw_low.abs() - d.raw_high.abs());
    }

    #[test]
    fn dominant_mode_heuristic() {
        let one = ThermalGapConfig::new(300.0, 1e-6).unwrap();
        assert_eq!(dominant_mode(&one).mode, 1);
        let three = ThermalGapConfig::new(300.0, 3e-6).unwrap();
        let d = dominant_mode(&three);
        assert!(d.estimate < 0.5 && d.mode == 0);
        // aT = 1/(2π) exactly
        let k = CODATA_2018;
        let gap = k.hbar_c() / (2.0 * std::f64::consts::PI * k.k_b * 300.0);
        let c = ThermalGapConfig::new(300.0, gap).unwrap();
        assert_eq!(dominant_mode(&c).mode, 1);
    }

    #[test]
    fn ideal_closed_form() {
        let k = CODATA_2018;
        let zero = ideal_pressure_low_temperature(1e-6, 0.0, &k).unwrap();
        let exact = -std::f64::consts::PI.powi(2) * k.hbar_c() / (240.0 * 1e-6_f64.powi(4));
        assert_eq!(zero.value, exact);
        assert!((exact / -1.30e-3 - 1.0).abs() < 5e-3);
        let cold = ideal_pressure_low_temperature(1e-6, 10.0, &k).unwrap();
        assert!((cold.reduced_gap_temperature - 0.004_377).abs() < 1e-5);
        assert!((cold.value / exact - 1.0) < 1e-8);
        assert!(cold.applicable);
        assert!(!ideal_pressure_low_temperature(5e-6, 300.0, &k).unwrap().applicable);
        assert!(ideal_pressure_low_temperature(1e-6, -1.0, &k).is_err());
    }

    #[test]
    fn predicted_coefficient() {
        let c = quadratic_coefficient_ev(9.0, 0.035);
        assert!((c - 18.62).abs() < 0.01, "{c}");
    }

    #[test]
    fn least_squares_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 - 0.5 * x).collect();
        let (a, b) = linear_least_squares(&xs, &ys);
        assert!((a - 2.5).abs() < 1e-14 && (b + 0.5).abs() < 1e-14);
    }

    #[test]
    fn fit_needs_five_temperatures() {
        let r = low_temperature_quadratic_fit(1e-6, &gold(), &[1e-4, 2e-4], &CODATA_2018);
        assert!(matches!(r, Err(CasimirError::Domain { .. })));
    }
}
