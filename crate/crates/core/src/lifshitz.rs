//! Lifshitz pressure and free energy between two identical half-spaces.
//!
//! Integrals run over the dimensionless `y = q a` with `q² = k⊥² + ζ²/c²`.
//! Mode `m` starts at `y = mγ`, `γ = 2π a k_B T/(ħc)`, and its Lifshitz
//! variables are `p = y/(mγ)`, `s = √(ε − 1 + p²)`. The zero mode never
//! uses a small-ζ numerical limit: its reflection coefficients come from
//! [`zero_frequency_reflection`].

use rayon::prelude::*;

use crate::constants::{PhysicalConstants, CODATA_2018};
use crate::dispersion::MaterialModel;
use crate::error::{require_positive, CasimirError, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::summation::NeumaierSum;

/// Hard cap on the number of Matsubara modes in one series.
pub const MAX_MODES: u32 = 100_000;

/// Temperature and gap width with the derived dimensionless quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalGapConfig {
    temperature: f64,
    gap: f64,
    gamma: f64,
    constants: PhysicalConstants,
}

impl ThermalGapConfig {
    /// `temperature` in K, `gap` in m.
    pub fn new(temperature: f64, gap: f64) -> Result<Self> {
        Self::with_constants(temperature, gap, CODATA_2018)
    }

    pub fn with_constants(temperature: f64, gap: f64, constants: PhysicalConstants) -> Result<Self> {
        require_positive("T", temperature)?;
        require_positive("a", gap)?;
        let gamma = 2.0 * std::f64::consts::PI * gap * constants.k_b * temperature / constants.hbar_c();
        require_positive("gamma", gamma)?;
        Ok(Self {
            temperature,
            gap,
            gamma,
            constants,
        })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// `γ = 2π a k_B T/(ħc)`, the lower integration limit of mode 1.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The product `aT` in natural units, `a k_B T/(ħc)`.
    pub fn reduced_gap_temperature(&self) -> f64 {
        self.gamma / (2.0 * std::f64::consts::PI)
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Matsubara frequency `ζ_m = 2π m k_B T/ħ` in rad/s.
    pub fn matsubara(&self, m: u32) -> f64 {
        2.0 * std::f64::consts::PI * m as f64 * self.constants.k_b * self.temperature / self.constants.hbar
    }

    /// The same temperature at another gap.
    pub fn with_gap(&self, gap: f64) -> Result<Self> {
        Self::with_constants(self.temperature, gap, self.constants)
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::with_constants(temperature, self.gap, self.constants)
    }

    /// `ζ a/c` for a frequency in rad/s.
    fn reduced_frequency(&self, zeta: f64) -> f64 {
        zeta * self.gap / self.constants.c
    }
}

/// Quadrature controls for the mode integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance of each mode integral and of the series truncation.
    pub rel_tol: f64,
    /// Length of the integration window above the lower limit.
    pub y_tail: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            y_tail: 30.0,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSettings {
    pub fn new(rel_tol: f64, y_tail: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-4) {
            return Err(CasimirError::Domain {
                quantity: "rel_tol",
                value: rel_tol,
                reason: "must lie in (0, 1e-4]",
            });
        }
        if !(y_tail >= 10.0 && y_tail.is_finite()) {
            return Err(CasimirError::Domain {
                quantity: "y_tail",
                value: y_tail,
                reason: "must be at least 10",
            });
        }
        Ok(Self {
            rel_tol,
            y_tail,
            max_subdivisions,
        })
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.y_tail, self.max_subdivisions)
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance::relative(self.rel_tol, self.max_subdivisions)
    }
}

/// Lifshitz variables at one quadrature point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifshitzVariables {
    pub p: f64,
    pub s: f64,
}

/// Squared reflection coefficients: `tm` is `A_m`, `te` is `B_m`.
///
/// The complements `1 − A` and `1 − B` are kept separately because the
/// denominators `1 − A e^{−2y}` are evaluated as
/// `(1 − A) − A·expm1(−2y)`, which stays accurate when both `A` and
/// `e^{−2y}` are close to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub tm: f64,
    pub te: f64,
    tm_loss: f64,
    te_loss: f64,
}

impl ReflectionPair {
    pub fn new(tm: f64, te: f64) -> Self {
        Self {
            tm,
            te,
            tm_loss: 1.0 - tm,
            te_loss: 1.0 - te,
        }
    }

    pub fn perfect() -> Self {
        Self::new(1.0, 1.0)
    }

    /// Reflection from the Lifshitz variables with `chi = ε − 1`.
    fn from_variables(p: f64, s: f64, chi: f64) -> Self {
        let eps = 1.0 + chi;
        let ep = eps * p;
        // εp − s = chi((2 + chi)p² − 1)/(εp + s), free of cancellation
        let tm_sum = ep + s;
        let r_tm = chi * ((2.0 + chi) * p * p - 1.0) / (tm_sum * tm_sum);
        let te_sum = s + p;
        let r_te = chi / (te_sum * te_sum);
        Self {
            tm: r_tm * r_tm,
            te: r_te * r_te,
            tm_loss: 4.0 * (ep / tm_sum) * (s / tm_sum),
            te_loss: 4.0 * (s / te_sum) * (p / te_sum),
        }
    }
}

/// `p = y/(mγ)` and `s = √(ε − 1 + p²)` for a mode `m ≥ 1`.
pub fn lifshitz_variables(y: f64, m: u32, cfg: &ThermalGapConfig, eps: f64) -> Result<LifshitzVariables> {
    if m == 0 {
        return Err(CasimirError::Domain {
            quantity: "m",
            value: 0.0,
            reason: "the zero mode has no finite Lifshitz variables",
        });
    }
    let lower = m as f64 * cfg.gamma();
    if !(y >= lower) {
        return Err(CasimirError::Domain {
            quantity: "y",
            value: y,
            reason: "must satisfy y >= m*gamma",
        });
    }
    if !(eps >= 1.0) {
        return Err(CasimirError::Domain {
            quantity: "eps",
            value: eps,
            reason: "permittivity on the imaginary axis must be >= 1",
        });
    }
    let p = y / lower;
    Ok(LifshitzVariables {
        p,
        s: (eps - 1.0 + p * p).sqrt(),
    })
}

/// `A = ((εp − s)/(εp + s))²`, `B = ((s − p)/(s + p))²`.
pub fn reflection_pair(y: f64, m: u32, cfg: &ThermalGapConfig, eps: f64) -> Result<ReflectionPair> {
    let v = lifshitz_variables(y, m, cfg, eps)?;
    Ok(ReflectionPair::from_variables(v.p, v.s, eps - 1.0))
}

/// `A` and `B` at frequency `ζ` and transverse magnitude `q` (both rad/s,
/// `q ≥ ζ`), i.e. at `p = q/ζ`.
pub fn reflection_at_momentum(zeta: f64, q: f64, eps: f64) -> Result<ReflectionPair> {
    // same domain as the impedance form
    surface_impedance(zeta, q, eps)?;
    let p = q / zeta;
    Ok(ReflectionPair::from_variables(p, (eps - 1.0 + p * p).sqrt(), eps - 1.0))
}

/// Reflection coefficients of the zero mode.
///
/// Drude-like media: `(1, 0)`. Plasma-like media: `A = 1` and
/// `B = ((√(y² + ŷ²) − y)/(√(y² + ŷ²) + y))²` with `ŷ = ω_p a/c`.
/// Ideal: `(1, 1)`.
pub fn zero_frequency_reflection(model: &MaterialModel, y: f64, cfg: &ThermalGapConfig) -> ReflectionPair {
    match model {
        MaterialModel::Ideal => ReflectionPair::perfect(),
        _ => {
            let product = model.zero_frequency_product().unwrap_or(0.0);
            if product == 0.0 {
                ReflectionPair::new(1.0, 0.0)
            } else {
                let yp2 = product * (cfg.gap() / cfg.constants().c).powi(2);
                plasma_zero_mode(y, yp2)
            }
        }
    }
}

fn plasma_zero_mode(y: f64, yp2: f64) -> ReflectionPair {
    let root = (y * y + yp2).sqrt();
    let sum = root + y;
    let r = yp2 / (sum * sum);
    ReflectionPair {
        tm: 1.0,
        te: r * r,
        tm_loss: 0.0,
        te_loss: 4.0 * (root / sum) * (y / sum),
    }
}

/// Reflection at one frequency, as a function of `y`.
#[derive(Debug, Clone, Copy)]
enum Optics {
    Perfect,
    DrudeZero,
    PlasmaZero { yp2: f64 },
    Dielectric { chi: f64, x: f64 },
}

impl Optics {
    /// `zeta == 0` selects the zero-frequency coefficients.
    fn new(zeta: f64, cfg: &ThermalGapConfig, model: &MaterialModel) -> Result<Self> {
        if let MaterialModel::Ideal = model {
            return Ok(Self::Perfect);
        }
        if zeta == 0.0 {
            let product = model.zero_frequency_product().unwrap_or(0.0);
            return Ok(if product == 0.0 {
                Self::DrudeZero
            } else {
                Self::PlasmaZero {
                    yp2: product * (cfg.gap() / cfg.constants().c).powi(2),
                }
            });
        }
        Ok(Self::Dielectric {
            chi: model.eps_minus_one(zeta, cfg.temperature())?,
            x: cfg.reduced_frequency(zeta),
        })
    }

    fn at(&self, y: f64) -> ReflectionPair {
        match *self {
            Self::Perfect => ReflectionPair::perfect(),
            Self::DrudeZero => ReflectionPair::new(1.0, 0.0),
            Self::PlasmaZero { yp2 } => plasma_zero_mode(y, yp2),
            Self::Dielectric { chi, x } => {
                let p = y / x;
                ReflectionPair::from_variables(p, (chi + p * p).sqrt(), chi)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Polarization {
    Both,
    Te,
}

/// `X e^{−2y}/(1 − X e^{−2y})`.
#[inline]
fn bose_ratio(x: f64, loss: f64, decay: f64, decay_m1: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    x * decay / (loss - x * decay_m1)
}

/// `ln(1 − X e^{−2y})`.
#[inline]
fn log_loss(x: f64, loss: f64, decay: f64, decay_m1: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let xe = x * decay;
    if xe < 0.5 {
        (-xe).ln_1p()
    } else {
        (loss - x * decay_m1).ln()
    }
}

fn pressure_integrand(y: f64, r: ReflectionPair) -> f64 {
    let decay = (-2.0 * y).exp();
    let decay_m1 = (-2.0 * y).exp_m1();
    y * y * (bose_ratio(r.tm, r.tm_loss, decay, decay_m1) + bose_ratio(r.te, r.te_loss, decay, decay_m1))
}

fn free_energy_integrand(y: f64, r: ReflectionPair, pol: Polarization) -> f64 {
    let decay = (-2.0 * y).exp();
    let decay_m1 = (-2.0 * y).exp_m1();
    let te = log_loss(r.te, r.te_loss, decay, decay_m1);
    match pol {
        Polarization::Te => y * te,
        Polarization::Both => y * (log_loss(r.tm, r.tm_loss, decay, decay_m1) + te),
    }
}

fn with_context<T>(r: Result<T>, context: impl FnOnce() -> String) -> Result<T> {
    r.map_err(|e| match e {
        CasimirError::Convergence { what, estimate, error } => CasimirError::Convergence {
            what: format!("{} ({what})", context()),
            estimate,
            error,
        },
        other => other,
    })
}

fn mode_optics(m: u32, cfg: &ThermalGapConfig, model: &MaterialModel) -> Result<Optics> {
    Optics::new(if m == 0 { 0.0 } else { cfg.matsubara(m) }, cfg, model)
}

/// Contribution of mode `m` to the pressure (Pa), including the half weight
/// of `m = 0`. Negative values are attractive.
pub fn mode_pressure(m: u32, cfg: &ThermalGapConfig, model: &MaterialModel, quad: &QuadratureSettings) -> Result<f64> {
    let optics = mode_optics(m, cfg, model)?;
    let lo = m as f64 * cfg.gamma();
    let integral = with_context(
        integrate(
            |y| pressure_integrand(y, optics.at(y)),
            lo,
            lo + quad.y_tail,
            quad.tolerance(),
        ),
        || format!("pressure mode m = {m}"),
    )?;
    let weight = if m == 0 { 0.5 } else { 1.0 };
    let k = cfg.constants();
    Ok(-weight * k.k_b * cfg.temperature() / (std::f64::consts::PI * cfg.gap().powi(3)) * integral.value)
}

/// Contribution of mode `m` to the free energy per unit area (J/m²).
pub fn mode_free_energy(
    m: u32,
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<f64> {
    let optics = mode_optics(m, cfg, model)?;
    let lo = m as f64 * cfg.gamma();
    let integral = with_context(
        integrate(
            |y| free_energy_integrand(y, optics.at(y), Polarization::Both),
            lo,
            lo + quad.y_tail,
            quad.tolerance(),
        ),
        || format!("free-energy mode m = {m}"),
    )?;
    let weight = if m == 0 { 0.5 } else { 1.0 };
    let k = cfg.constants();
    Ok(weight * k.k_b * cfg.temperature() / (2.0 * std::f64::consts::PI * cfg.gap().powi(2)) * integral.value)
}

/// One term of a Matsubara series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeContribution {
    pub m: u32,
    pub value: f64,
    /// Share of the total, in percent.
    pub fraction: f64,
}

/// A truncated Matsubara series with its per-mode breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSeries {
    pub total: f64,
    pub per_mode: Vec<ModeContribution>,
    pub modes_used: usize,
    pub converged: bool,
}

/// Pressure with per-mode contributions (Pa).
pub type PressureResult = ModeSeries;

impl ModeSeries {
    /// Fraction (percent) carried by mode `m`, zero beyond truncation.
    pub fn fraction(&self, m: u32) -> f64 {
        self.per_mode.get(m as usize).map_or(0.0, |c| c.fraction)
    }

    /// Mode with the largest share.
    pub fn dominant_mode(&self) -> Option<u32> {
        self.per_mode
            .iter()
            .max_by(|a, b| a.fraction.total_cmp(&b.fraction))
            .map(|c| c.m)
    }
}

const FIRST_CHUNK: u32 = 8;
const MAX_CHUNK: u32 = 256;

/// Sums `term(m)` over `m = 0, 1, 2, …` in ascending order.
///
/// Terms are produced in chunks on the rayon pool but accumulated serially,
/// so the result is bit-identical for any number of threads. The series
/// stops once two consecutive terms (with `m ≥ 5`) are below
/// `rel_tol × |partial sum|`.
fn matsubara_series<F>(rel_tol: f64, what: &str, term: F) -> Result<ModeSeries>
where
    F: Fn(u32) -> Result<f64> + Sync,
{
    let mut acc = NeumaierSum::new();
    let mut values: Vec<f64> = Vec::new();
    let mut small = 0;
    let mut start = 0u32;
    let mut chunk = FIRST_CHUNK;
    'outer: loop {
        if start >= MAX_MODES {
            return Err(CasimirError::Convergence {
                what: format!("{what}: Matsubara series exceeded {MAX_MODES} modes"),
                estimate: acc.value(),
                error: values.last().copied().unwrap_or(f64::NAN).abs(),
            });
        }
        let end = (start + chunk).min(MAX_MODES);
        let batch: Vec<Result<f64>> = (start..end).into_par_iter().map(&term).collect();
        for (offset, v) in batch.into_iter().enumerate() {
            let v = v?;
            let m = start + offset as u32;
            acc.add(v);
            values.push(v);
            if m >= 5 && v.abs() <= rel_tol * acc.value().abs() {
                small += 1;
                if small >= 2 {
                    break 'outer;
                }
            } else {
                small = 0;
            }
        }
        start = end;
        chunk = (chunk * 2).min(MAX_CHUNK);
    }
    let total = acc.value();
    let per_mode = values
        .iter()
        .enumerate()
        .map(|(m, &value)| ModeContribution {
            m: m as u32,
            value,
            fraction: if total != 0.0 { 100.0 * value / total } else { 0.0 },
        })
        .collect();
    Ok(ModeSeries {
        total,
        per_mode,
        modes_used: values.len(),
        converged: true,
    })
}

/// Lifshitz pressure `𝓕^T` (Pa) with its Matsubara decomposition.
pub fn total_pressure(
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<PressureResult> {
    matsubara_series(quad.rel_tol, "pressure", |m| mode_pressure(m, cfg, model, quad))
}

/// Free energy per unit area (J/m²) with its Matsubara decomposition.
pub fn free_energy_series(
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<ModeSeries> {
    matsubara_series(quad.rel_tol, "free energy", |m| mode_free_energy(m, cfg, model, quad))
}

/// Free energy per unit area (J/m²).
pub fn free_energy(cfg: &ThermalGapConfig, model: &MaterialModel, quad: &QuadratureSettings) -> Result<f64> {
    Ok(free_energy_series(cfg, model, quad)?.total)
}

fn frequency_integral(
    zeta: f64,
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
    pol: Polarization,
) -> Result<f64> {
    if !(zeta >= 0.0 && zeta.is_finite()) {
        return Err(CasimirError::Domain {
            quantity: "zeta",
            value: zeta,
            reason: "must be finite and non-negative",
        });
    }
    let optics = Optics::new(zeta, cfg, model)?;
    let lo = cfg.reduced_frequency(zeta);
    let r = integrate(
        |y| free_energy_integrand(y, optics.at(y), pol),
        lo,
        lo + quad.y_tail,
        quad.tolerance(),
    );
    Ok(with_context(r, || format!("frequency integral at zeta = {zeta:e}"))?.value)
}

/// TE mode function `f(ζ) = ∫_{ζa/c}^∞ y ln(1 − B e^{−2y}) dy` at a
/// continuous frequency (rad/s). `f(0)` uses the zero-frequency reflection.
///
/// The TE free energy is `(k_B T/(2π a²)) Σ'_m f(ζ_m)`.
pub fn te_mode_function(
    zeta: f64,
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<f64> {
    frequency_integral(zeta, cfg, model, quad, Polarization::Te)
}

/// Both polarizations: `g(ζ) = ∫_{ζa/c}^∞ y [ln(1 − A e^{−2y}) + ln(1 − B e^{−2y})] dy`.
pub fn spectral_free_energy(
    zeta: f64,
    cfg: &ThermalGapConfig,
    model: &MaterialModel,
    quad: &QuadratureSettings,
) -> Result<f64> {
    frequency_integral(zeta, cfg, model, quad, Polarization::Both)
}

/// Momentum-dependent surface impedance `Z = −ζ/√(ζ²(ε − 1) + q²)`.
///
/// `q` is the magnitude `√(k⊥² + ζ²/c²)` expressed as a frequency (`q c`,
/// rad/s), so `q ≥ ζ`.
pub fn surface_impedance(zeta: f64, q: f64, eps: f64) -> Result<f64> {
    require_positive("zeta", zeta)?;
    if !(q >= zeta) {
        return Err(CasimirError::Domain {
            quantity: "q",
            value: q,
            reason: "transverse magnitude must satisfy q >= zeta",
        });
    }
    if !(eps >= 1.0) {
        return Err(CasimirError::Domain {
            quantity: "eps",
            value: eps,
            reason: "permittivity on the imaginary axis must be >= 1",
        });
    }
    Ok(-zeta / (zeta * zeta * (eps - 1.0) + q * q).sqrt())
}

/// TE reflection coefficient in impedance form, `r = −(1 + Zp)/(1 − Zp)`
/// with `p = q/ζ`. Its square equals `B` of [`reflection_pair`].
pub fn rte_from_impedance(zeta: f64, q: f64, eps: f64) -> Result<f64> {
    let z = surface_impedance(zeta, q, eps)?;
    Ok(impedance_reflection(z, q / zeta))
}

fn impedance_reflection(z: f64, p: f64) -> f64 {
    -(1.0 + z * p) / (1.0 - z * p)
}

/// Normal-skin-effect impedance continued to `ω = iζ`:
/// `Z = −√(ζ/(4πσ))` with the Gaussian-unit dc conductivity
/// `σ = ω_p²/(4πν)`, i.e. `Z = −√(ζν)/ω_p`.
pub fn normal_skin_impedance(zeta: f64, omega_p: f64, nu: f64) -> Result<f64> {
    require_positive("zeta", zeta)?;
    require_positive("omega_p", omega_p)?;
    require_positive("nu", nu)?;
    let sigma = omega_p * omega_p / (4.0 * std::f64::consts::PI * nu);
    Ok(-(zeta / (4.0 * std::f64::consts::PI * sigma)).sqrt())
}

/// `|r^TE|²` along a decreasing frequency sequence at fixed `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedanceSample {
    pub zeta: f64,
    /// With `Z(ζ, q)` depending on the transverse momentum.
    pub momentum_dependent: f64,
    /// With the frequency-only `Z(ζ) = −1/√ε` (the `q = ζ` impedance).
    pub frequency_only: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroFrequencyComparison {
    pub samples: Vec<ImpedanceSample>,
}

impl ZeroFrequencyComparison {
    /// `(momentum-dependent, frequency-only)` at the smallest ζ.
    pub fn limits(&self) -> (f64, f64) {
        let last = self.samples.last().expect("at least one sample");
        (last.momentum_dependent, last.frequency_only)
    }
}

/// Compares the two impedance prescriptions as `ζ → 0` at fixed `q`.
///
/// For a Drude metal the momentum-dependent form sends `|r^TE|² → 0`
/// while the frequency-only form sends it to one.
pub fn rte_zero_frequency_comparison(
    model: &MaterialModel,
    temperature: f64,
    q_fixed: f64,
    zetas: &[f64],
) -> Result<ZeroFrequencyComparison> {
    if zetas.is_empty() {
        return Err(CasimirError::Domain {
            quantity: "zeta sequence length",
            value: 0.0,
            reason: "needs at least one frequency",
        });
    }
    let mut samples = Vec::with_capacity(zetas.len());
    let mut previous = f64::INFINITY;
    for &zeta in zetas {
        require_positive("zeta", zeta)?;
        if zeta >= previous {
            return Err(CasimirError::Domain {
                quantity: "zeta",
                value: zeta,
                reason: "sequence must be strictly decreasing",
            });
        }
        previous = zeta;
        let eps = model.eps(zeta, temperature)?;
        let p = q_fixed / zeta;
        let r_q = rte_from_impedance(zeta, q_fixed, eps)?;
        let r_f = impedance_reflection(surface_impedance(zeta, zeta, eps)?, p);
        samples.push(ImpedanceSample {
            zeta,
            momentum_dependent: r_q * r_q,
            frequency_only: r_f * r_f,
        });
    }
    Ok(ZeroFrequencyComparison { samples })
}
