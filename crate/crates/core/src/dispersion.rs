//! Permittivity along the imaginary frequency axis.
//!
//! Every model answers `ε(iζ, T)` for `ζ > 0`. Internally the engine works
//! with the susceptibility-like quantity `ε − 1`, which stays accurate when
//! `ε` approaches one at high frequency.

use std::io::Read;
use std::path::Path;

use crate::constants::{PhysicalConstants, CODATA_2018};
use crate::error::{require_positive, CasimirError, Result};
use crate::quadrature::{integrate, Tolerance};

/// Debye temperature of gold used when none is given (K).
pub const GOLD_DEBYE_TEMPERATURE: f64 = 170.0;
/// Plasma frequency of gold (eV).
pub const GOLD_PLASMA_EV: f64 = 9.0;
/// Room-temperature relaxation frequency of gold (eV).
pub const GOLD_RELAXATION_EV: f64 = 0.035;

/// Temperature dependence of the Drude relaxation frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelaxationModel {
    /// Temperature-independent ν (eV).
    Constant { nu: f64 },
    /// Bloch–Grüneisen scaling calibrated so that ν(`t_ref`) = `nu_ref`.
    BlochGruneisen { theta_d: f64, nu_ref: f64, t_ref: f64 },
}

impl RelaxationModel {
    pub fn constant(nu_ev: f64) -> Result<Self> {
        require_positive("nu", nu_ev)?;
        Ok(Self::Constant { nu: nu_ev })
    }

    pub fn bloch_gruneisen(theta_d: f64, nu_ref: f64, t_ref: f64) -> Result<Self> {
        require_positive("theta_D", theta_d)?;
        require_positive("nu_ref", nu_ref)?;
        require_positive("T_ref", t_ref)?;
        Ok(Self::BlochGruneisen { theta_d, nu_ref, t_ref })
    }

    /// ν at the reference temperature (eV).
    pub fn reference_ev(&self) -> f64 {
        match *self {
            Self::Constant { nu } => nu,
            Self::BlochGruneisen { nu_ref, .. } => nu_ref,
        }
    }

    /// ν(T) in eV.
    pub fn at(&self, temperature: f64) -> Result<f64> {
        nu_bloch_gruneisen(temperature, self)
    }
}

/// ν(T) in eV.
///
/// For the Bloch–Grüneisen model
/// `ν(T) = C (T/θ_D)^5 ∫₀^{θ_D/T} x⁵ eˣ/(eˣ − 1)² dx` with `C` fixed by the
/// calibration point; a constant model returns its value unchanged.
pub fn nu_bloch_gruneisen(temperature: f64, model: &RelaxationModel) -> Result<f64> {
    require_positive("T", temperature)?;
    match *model {
        RelaxationModel::Constant { nu } => Ok(nu),
        RelaxationModel::BlochGruneisen { theta_d, nu_ref, t_ref } => {
            if temperature == t_ref {
                return Ok(nu_ref);
            }
            Ok(nu_ref * (gruneisen_shape(temperature, theta_d)? / gruneisen_shape(t_ref, theta_d)?))
        }
    }
}

/// `(T/θ)^5 J₅(θ/T)`, the temperature dependence of the phonon-limited
/// scattering rate.
fn gruneisen_shape(temperature: f64, theta_d: f64) -> Result<f64> {
    let x_max = theta_d / temperature;
    // beyond x = 200 the integrand is below 1e-75 of its peak
    let upper = x_max.min(200.0);
    let integrand = |x: f64| {
        // x^5 e^x / (e^x - 1)^2 = x^5 / (4 sinh^2(x/2))
        let s = (0.5 * x).sinh();
        x.powi(5) / (4.0 * s * s)
    };
    let j5 = integrate(integrand, 0.0, upper, Tolerance::relative(1e-13, 200))?.value;
    Ok((temperature / theta_d).powi(5) * j5)
}

/// Drude parameters, stored in eV and as angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParams {
    omega_p_ev: f64,
    omega_p: f64,
    relaxation: RelaxationModel,
    rad_per_ev: f64,
}

impl DrudeParams {
    pub fn new(omega_p_ev: f64, relaxation: RelaxationModel) -> Result<Self> {
        Self::with_constants(omega_p_ev, relaxation, &CODATA_2018)
    }

    pub fn with_constants(omega_p_ev: f64, relaxation: RelaxationModel, constants: &PhysicalConstants) -> Result<Self> {
        require_positive("omega_p", omega_p_ev)?;
        require_positive("nu_ref", relaxation.reference_ev())?;
        let rad_per_ev = constants.ev_to_rad_per_s(1.0);
        Ok(Self {
            omega_p_ev,
            omega_p: omega_p_ev * rad_per_ev,
            relaxation,
            rad_per_ev,
        })
    }

    /// Gold with ω_p = 9 eV and constant ν = 35 meV.
    pub fn gold() -> Self {
        Self::new(GOLD_PLASMA_EV, RelaxationModel::Constant { nu: GOLD_RELAXATION_EV })
            .expect("gold parameters are valid")
    }

    pub fn plasma_frequency_ev(&self) -> f64 {
        self.omega_p_ev
    }

    /// ω_p in rad/s.
    pub fn plasma_frequency(&self) -> f64 {
        self.omega_p
    }

    pub fn relaxation(&self) -> &RelaxationModel {
        &self.relaxation
    }

    /// ν(T) in rad/s.
    pub fn relaxation_frequency(&self, temperature: f64) -> Result<f64> {
        Ok(self.relaxation.at(temperature)? * self.rad_per_ev)
    }
}

/// Plasma-model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaParams {
    omega_p_ev: f64,
    omega_p: f64,
}

impl PlasmaParams {
    pub fn new(omega_p_ev: f64) -> Result<Self> {
        Self::with_constants(omega_p_ev, &CODATA_2018)
    }

    pub fn with_constants(omega_p_ev: f64, constants: &PhysicalConstants) -> Result<Self> {
        require_positive("omega_p", omega_p_ev)?;
        Ok(Self {
            omega_p_ev,
            omega_p: constants.ev_to_rad_per_s(omega_p_ev),
        })
    }

    pub fn plasma_frequency_ev(&self) -> f64 {
        self.omega_p_ev
    }

    pub fn plasma_frequency(&self) -> f64 {
        self.omega_p
    }
}

/// Declared behaviour of tabulated data at zero frequency.
///
/// Finite data cannot decide whether `ζ²(ε − 1)` vanishes as `ζ → 0`, so
/// the caller states it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroModeClass {
    /// `ζ²(ε − 1) → 0`: no TE reflection at zero frequency.
    DrudeLike,
    /// `ζ²(ε − 1) → ω_p²`, with ω_p² taken from the lowest table node.
    PlasmaLike,
}

/// Tabulated `ε(iζ)` with log-log interpolation of `ε − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermittivityTable {
    zeta: Vec<f64>,
    eps: Vec<f64>,
    log_zeta: Vec<f64>,
    log_chi: Vec<f64>,
}

impl PermittivityTable {
    /// Builds a table from `(ζ rad/s, ε)` points. `ζ` must be strictly
    /// ascending and every `ε` above one.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(CasimirError::Table {
                line: 0,
                reason: format!("need at least 2 points, got {}", points.len()),
            });
        }
        for (i, &(z, e)) in points.iter().enumerate() {
            validate_row(i as u64 + 1, z, e, (i > 0).then(|| points[i - 1].0))?;
        }
        let (zeta, eps): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        Ok(Self {
            log_zeta: zeta.iter().map(|z| z.ln()).collect(),
            log_chi: eps.iter().map(|e| (e - 1.0).ln()).collect(),
            zeta,
            eps,
        })
    }

    /// Parses the `zeta_rad_per_s,epsilon` CSV format. Errors carry the
    /// 1-based line number of the offending row.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| CasimirError::Table {
                line: 1,
                reason: e.to_string(),
            })?
            .clone();
        if headers.len() != 2 || &headers[0] != "zeta_rad_per_s" || &headers[1] != "epsilon" {
            return Err(CasimirError::Table {
                line: 1,
                reason: format!(
                    "expected header `zeta_rad_per_s,epsilon`, found `{}`",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
        let mut points: Vec<(f64, f64)> = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| CasimirError::Table {
                line: e.position().map_or(0, |p| p.line()),
                reason: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != 2 {
                return Err(CasimirError::Table {
                    line,
                    reason: format!("expected 2 fields, found {}", record.len()),
                });
            }
            let parse = |s: &str, name: &str| {
                s.parse::<f64>().map_err(|_| CasimirError::Table {
                    line,
                    reason: format!("cannot parse {name} from `{s}`"),
                })
            };
            let z = parse(&record[0], "zeta")?;
            let e = parse(&record[1], "epsilon")?;
            validate_row(line, z, e, points.last().map(|p| p.0))?;
            points.push((z, e));
        }
        Self::new(points)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| CasimirError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_csv_reader(file)
    }

    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.zeta.iter().copied().zip(self.eps.iter().copied())
    }

    pub fn range(&self) -> (f64, f64) {
        (self.zeta[0], self.zeta[self.zeta.len() - 1])
    }

    /// `ε − 1` at `zeta`, interpolated linearly in `(ln ζ, ln(ε − 1))`.
    pub fn eps_minus_one(&self, zeta: f64) -> Result<f64> {
        let (min, max) = self.range();
        if !(zeta >= min && zeta <= max) {
            return Err(CasimirError::OutOfRange { zeta, min, max });
        }
        let hi = self.zeta.partition_point(|&z| z < zeta);
        if self.zeta[hi] == zeta {
            return Ok(self.eps[hi] - 1.0);
        }
        let lo = hi - 1;
        let t = (zeta.ln() - self.log_zeta[lo]) / (self.log_zeta[hi] - self.log_zeta[lo]);
        Ok((self.log_chi[lo] + t * (self.log_chi[hi] - self.log_chi[lo])).exp())
    }

    fn lowest_node_product(&self) -> f64 {
        self.zeta[0] * self.zeta[0] * (self.eps[0] - 1.0)
    }
}

fn validate_row(line: u64, zeta: f64, eps: f64, previous: Option<f64>) -> Result<()> {
    if !(zeta.is_finite() && zeta > 0.0) {
        return Err(CasimirError::Table {
            line,
            reason: format!("zeta must be positive and finite, got {zeta}"),
        });
    }
    if !(eps.is_finite() && eps > 1.0) {
        return Err(CasimirError::Table {
            line,
            reason: format!("epsilon must exceed 1, got {eps}"),
        });
    }
    if let Some(prev) = previous {
        if zeta <= prev {
            return Err(CasimirError::Table {
                line,
                reason: format!("zeta must be strictly ascending ({zeta} after {prev})"),
            });
        }
    }
    Ok(())
}

/// A material description along the imaginary frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub enum MaterialModel {
    Drude(DrudeParams),
    Plasma(PlasmaParams),
    /// Perfect reflector: both reflection coefficients are one at every
    /// frequency. It has no finite permittivity.
    Ideal,
    Tabulated {
        table: PermittivityTable,
        zero_mode: ZeroModeClass,
    },
}

impl MaterialModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Drude(_) => "drude",
            Self::Plasma(_) => "plasma",
            Self::Ideal => "ideal",
            Self::Tabulated { .. } => "table",
        }
    }

    /// `ε(iζ, T) − 1`.
    pub fn eps_minus_one(&self, zeta: f64, temperature: f64) -> Result<f64> {
        require_positive("zeta", zeta)?;
        match self {
            Self::Drude(p) => {
                require_positive("T", temperature)?;
                let nu = p.relaxation_frequency(temperature)?;
                Ok(p.omega_p * p.omega_p / (zeta * (zeta + nu)))
            }
            Self::Plasma(p) => Ok(p.omega_p * p.omega_p / (zeta * zeta)),
            Self::Ideal => Err(CasimirError::UnsupportedModel {
                operation: "finite permittivity",
                model: "ideal",
            }),
            Self::Tabulated { table, .. } => table.eps_minus_one(zeta),
        }
    }

    /// `ε(iζ, T)`.
    pub fn eps(&self, zeta: f64, temperature: f64) -> Result<f64> {
        Ok(1.0 + self.eps_minus_one(zeta, temperature)?)
    }

    /// `lim ζ²(ε − 1)` as `ζ → 0` in rad²/s², when the model has one.
    pub(crate) fn zero_frequency_product(&self) -> Option<f64> {
        match self {
            Self::Drude(_) => Some(0.0),
            Self::Plasma(p) => Some(p.omega_p * p.omega_p),
            Self::Tabulated {
                zero_mode: ZeroModeClass::DrudeLike,
                ..
            } => Some(0.0),
            Self::Tabulated {
                table,
                zero_mode: ZeroModeClass::PlasmaLike,
            } => Some(table.lowest_node_product()),
            Self::Ideal => None,
        }
    }
}

/// Drude permittivity `1 + ω_p²/(ζ(ζ + ν(T)))`.
pub fn eps_drude(zeta: f64, params: &DrudeParams, temperature: f64) -> Result<f64> {
    MaterialModel::Drude(*params).eps(zeta, temperature)
}

/// Plasma permittivity `1 + ω_p²/ζ²` for `omega_p_ev` in eV.
pub fn eps_plasma(zeta: f64, omega_p_ev: f64) -> Result<f64> {
    MaterialModel::Plasma(PlasmaParams::new(omega_p_ev)?).eps(zeta, 1.0)
}

pub fn eps_tabulated(zeta: f64, table: &PermittivityTable) -> Result<f64> {
    Ok(1.0 + table.eps_minus_one(zeta)?)
}

/// `∫_0^upper p(ω) dω` for the Drude spectral function
/// `p(ω) = (2/π) γ/(ω² + γ²)`, evaluated by quadrature.
pub fn drude_spectral_weight(gamma: f64, upper: f64) -> Result<f64> {
    require_positive("gamma", gamma)?;
    if upper.is_infinite() {
        return sum_rule_check(gamma);
    }
    require_positive("upper", upper)?;
    // integrate in ω/γ so the rule sees an O(1) interval
    let t = upper / gamma;
    let lorentz = |u: f64| std::f64::consts::FRAC_2_PI / (1.0 + u * u);
    Ok(integrate(lorentz, 0.0, t, Tolerance::relative(1e-13, 200))?.value)
}

/// Total spectral weight `∫_0^∞ p(ω) dω`, expected to be one.
///
/// The finite part up to `10³ γ` is integrated numerically; the tail uses
/// its antiderivative `(2/π) arctan(γ/Λ)`.
pub fn sum_rule_check(gamma: f64) -> Result<f64> {
    require_positive("gamma", gamma)?;
    let cutoff = 1e3 * gamma;
    let body = drude_spectral_weight(gamma, cutoff)?;
    let tail = std::f64::consts::FRAC_2_PI * (gamma / cutoff).atan();
    Ok(body + tail)
}

/// The zero-frequency limit of `ζ²(ε(iζ) − 1)` estimated from a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroModeProduct {
    /// Limit in rad²/s².
    pub limit: f64,
    /// `(ζ, ζ²(ε − 1))` samples, descending in ζ.
    pub sequence: Vec<(f64, f64)>,
}

/// Estimates `lim_{ζ→0} ζ²(ε(iζ) − 1)`.
///
/// Samples descend geometrically from 10¹² rad/s by decades. The limit is
/// declared zero once a sample falls below `1e-12 ω_p²`, or equal to the
/// sample value once consecutive samples agree to 1e-12 relative.
pub fn zero_mode_product(model: &MaterialModel) -> Result<ZeroModeProduct> {
    let (omega_p, temperature) = match model {
        MaterialModel::Drude(p) => (p.plasma_frequency(), 300.0),
        MaterialModel::Plasma(p) => (p.plasma_frequency(), 300.0),
        other => {
            return Err(CasimirError::UnsupportedModel {
                operation: "zero_mode_product (classification is declared, not computed)",
                model: other.name(),
            })
        }
    };
    let scale = omega_p * omega_p;
    let mut sequence = Vec::new();
    let mut zeta = 1e12;
    let mut previous: Option<f64> = None;
    while zeta > 1e-250 {
        let product = zeta * zeta * model.eps_minus_one(zeta, temperature)?;
        sequence.push((zeta, product));
        if product < 1e-12 * scale {
            return Ok(ZeroModeProduct { limit: 0.0, sequence });
        }
        if let Some(prev) = previous {
            if ((product - prev) / prev).abs() < 1e-12 {
                return Ok(ZeroModeProduct {
                    limit: product,
                    sequence,
                });
            }
        }
        previous = Some(product);
        zeta /= 10.0;
    }
    let last = sequence.last().map_or(f64::NAN, |s| s.1);
    Err(CasimirError::Convergence {
        what: "zero-frequency product sequence".into(),
        estimate: last,
        error: last,
    })
}
