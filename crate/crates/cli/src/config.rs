use std::path::{Path, PathBuf};

use casimir_core::{
    DrudeParams, MaterialModel, PermittivityTable, PhysicalConstants, PlasmaParams, QuadratureSettings,
    RelaxationModel, ZeroModeClass, CODATA_2018, CONSTANTS_VERSION,
};
use serde::{Deserialize, Serialize};

use crate::args::{Command, Format, ImpedanceArgs, MaterialArgs, ModelKind, NuModel, OutputArgs, SweepArgs, ZeroMode};
use crate::error::{CliError, Result};

/// Environment variable naming a TOML file that replaces the built-in
/// constants. Meant for tests.
pub const CONSTANTS_ENV: &str = "CASIMIR_CONSTANTS";

/// Reference temperature (K) of the Bloch-Gruneisen calibration.
pub const BG_REFERENCE_TEMPERATURE: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Pressure,
    Diff,
    Modes,
    SpherePlate,
    Lowtemp,
    ImpedanceCheck,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pressure => "pressure",
            Self::Diff => "diff",
            Self::Modes => "modes",
            Self::SpherePlate => "sphere-plate",
            Self::Lowtemp => "lowtemp",
            Self::ImpedanceCheck => "impedance-check",
        }
    }
}

/// Material description as given on the command line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaterialSpec {
    pub model: ModelKind,
    pub omega_p_ev: f64,
    pub nu_ev: f64,
    pub nu_model: NuModel,
    #[serde(rename = "theta_d_K")]
    pub theta_d: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_mode: Option<ZeroMode>,
}

impl MaterialSpec {
    fn from_args(args: &MaterialArgs) -> Result<Self> {
        positive("omega-p", args.omega_p)?;
        positive("nu", args.nu)?;
        positive("theta-d", args.theta_d)?;
        match (args.model, &args.table, args.zero_mode) {
            (ModelKind::Table, None, _) => return Err(CliError::config("table", "--model table needs --table <path>")),
            (ModelKind::Table, Some(_), None) => {
                return Err(CliError::config(
                    "zero-mode",
                    "tabulated data must declare --zero-mode drude-like|plasma-like",
                ))
            }
            (ModelKind::Table, Some(_), Some(_)) => {}
            (_, Some(_), _) => return Err(CliError::config("table", "only valid with --model table")),
            (_, None, Some(_)) => return Err(CliError::config("zero-mode", "only valid with --model table")),
            (_, None, None) => {}
        }
        Ok(Self {
            model: args.model,
            omega_p_ev: args.omega_p,
            nu_ev: args.nu,
            nu_model: args.nu_model,
            theta_d: args.theta_d,
            table: args.table.clone(),
            zero_mode: args.zero_mode,
        })
    }

    pub fn relaxation(&self) -> Result<RelaxationModel> {
        let r = match self.nu_model {
            NuModel::Constant => RelaxationModel::constant(self.nu_ev),
            NuModel::Bg => RelaxationModel::bloch_gruneisen(self.theta_d, self.nu_ev, BG_REFERENCE_TEMPERATURE),
        };
        r.map_err(|e| CliError::config("nu", e.to_string()))
    }

    pub fn drude(&self, constants: &PhysicalConstants) -> Result<DrudeParams> {
        DrudeParams::with_constants(self.omega_p_ev, self.relaxation()?, constants)
            .map_err(|e| CliError::config("omega-p", e.to_string()))
    }

    pub fn build(&self, constants: &PhysicalConstants) -> Result<MaterialModel> {
        Ok(match self.model {
            ModelKind::Drude => MaterialModel::Drude(self.drude(constants)?),
            ModelKind::Plasma => MaterialModel::Plasma(
                PlasmaParams::with_constants(self.omega_p_ev, constants)
                    .map_err(|e| CliError::config("omega-p", e.to_string()))?,
            ),
            ModelKind::Ideal => MaterialModel::Ideal,
            ModelKind::Table => {
                let path = self.table.as_deref().expect("checked at parse time");
                let table =
                    PermittivityTable::from_csv_path(path).map_err(|e| CliError::config("table", e.to_string()))?;
                let zero_mode = match self.zero_mode.expect("checked at parse time") {
                    ZeroMode::DrudeLike => ZeroModeClass::DrudeLike,
                    ZeroMode::PlasmaLike => ZeroModeClass::PlasmaLike,
                };
                MaterialModel::Tabulated { table, zero_mode }
            }
        })
    }
}

/// Physical constants in force for a run and the label recorded in output.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsSpec {
    pub version: String,
    pub values: PhysicalConstants,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsFile {
    version: Option<String>,
    hbar: f64,
    c: f64,
    k_b: f64,
    electron_volt: f64,
}

impl ConstantsSpec {
    pub fn builtin() -> Self {
        Self {
            version: CONSTANTS_VERSION.to_string(),
            values: CODATA_2018,
        }
    }

    /// Built-in constants unless the override variable names a file.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONSTANTS_ENV) {
            Some(path) => Self::from_file(Path::new(&path)),
            None => Ok(Self::builtin()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("constants", format!("{}: {e}", path.display())))?;
        let file: ConstantsFile =
            toml::from_str(&text).map_err(|e| CliError::config("constants", format!("{}: {e}", path.display())))?;
        for (name, v) in [
            ("hbar", file.hbar),
            ("c", file.c),
            ("k_b", file.k_b),
            ("electron_volt", file.electron_volt),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::config(
                    "constants",
                    format!("{name} must be finite and positive"),
                ));
            }
        }
        Ok(Self {
            version: file.version.unwrap_or_else(|| format!("custom:{}", path.display())),
            values: PhysicalConstants {
                hbar: file.hbar,
                c: file.c,
                k_b: file.k_b,
                electron_volt: file.electron_volt,
            },
        })
    }
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub material: MaterialSpec,
    /// Ascending, in um.
    pub gaps_um: Vec<f64>,
    /// K. Empty for `lowtemp` means the automatic grid.
    pub temperatures: Vec<f64>,
    pub radius_um: f64,
    pub rel_tol: f64,
    /// rad/s, for the impedance limits.
    pub q_fixed: f64,
    pub limits: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub constants: ConstantsSpec,
}

impl RunConfig {
    pub fn from_command(command: &Command, constants: ConstantsSpec) -> Result<Self> {
        match command {
            Command::Pressure(a) => Self::sweep(CommandKind::Pressure, a, constants),
            Command::Diff(a) => Self::sweep(CommandKind::Diff, a, constants),
            Command::Modes(a) => Self::sweep(CommandKind::Modes, a, constants),
            Command::SpherePlate(a) => Self::sweep(CommandKind::SpherePlate, a, constants),
            Command::Lowtemp(a) => Self::sweep(CommandKind::Lowtemp, a, constants),
            Command::ImpedanceCheck(a) => Self::impedance(a, constants),
        }
    }

    fn sweep(command: CommandKind, args: &SweepArgs, constants: ConstantsSpec) -> Result<Self> {
        let material = MaterialSpec::from_args(&args.material)?;
        let gaps_um = match (&args.gap_range, args.gap.is_empty()) {
            (Some(range), _) => parse_gap_range(range, args.log_spacing)?,
            (None, false) => {
                for &g in &args.gap {
                    positive("gap", g)?;
                }
                if args.gap.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(CliError::config("gap", "gaps must be strictly ascending"));
                }
                args.gap.clone()
            }
            (None, true) => return Err(CliError::config("gap", "give --gap <um> or --gap-range <lo:hi:n>")),
        };
        for &t in &args.temps {
            positive("temp", t)?;
        }
        let temperatures = match (command, args.temps.len()) {
            (CommandKind::Pressure, 0) | (CommandKind::Modes, 0) => vec![300.0],
            (CommandKind::Modes, 1) => args.temps.clone(),
            (CommandKind::Modes, _) => return Err(CliError::config("temp", "modes takes a single temperature")),
            (CommandKind::Diff | CommandKind::SpherePlate, 0) => vec![300.0, 350.0],
            (CommandKind::Diff | CommandKind::SpherePlate, 2) => args.temps.clone(),
            (CommandKind::Diff | CommandKind::SpherePlate, _) => {
                return Err(CliError::config(
                    "temp",
                    "needs exactly two temperatures: --temp <low> --temp <high>",
                ))
            }
            (CommandKind::Lowtemp, n) if n > 0 && n < 5 => {
                return Err(CliError::config(
                    "temp",
                    "the quadratic fit needs at least five temperatures",
                ))
            }
            _ => args.temps.clone(),
        };
        if command == CommandKind::Lowtemp && material.model != ModelKind::Drude {
            return Err(CliError::config("model", "lowtemp fits the Drude model only"));
        }
        positive("radius", args.radius)?;
        let rel_tol = check_rel_tol(args.rel_tol)?;
        let (format, out, threads) = output(&args.output)?;
        Ok(Self {
            command,
            material,
            gaps_um,
            temperatures,
            radius_um: args.radius,
            rel_tol,
            q_fixed: 0.0,
            limits: false,
            format,
            out,
            threads,
            constants,
        })
    }

    fn impedance(args: &ImpedanceArgs, constants: ConstantsSpec) -> Result<Self> {
        let material = MaterialSpec::from_args(&args.material)?;
        if material.model == ModelKind::Ideal {
            return Err(CliError::config(
                "model",
                "the ideal model has no permittivity to compare",
            ));
        }
        positive("temp", args.temp)?;
        positive("q", args.q)?;
        let (format, out, threads) = output(&args.output)?;
        Ok(Self {
            command: CommandKind::ImpedanceCheck,
            material,
            gaps_um: Vec::new(),
            temperatures: vec![args.temp],
            radius_um: 0.0,
            rel_tol: QuadratureSettings::default().rel_tol,
            q_fixed: args.q,
            limits: args.limits,
            format,
            out,
            threads,
            constants,
        })
    }

    pub fn quadrature(&self) -> QuadratureSettings {
        QuadratureSettings::default()
            .with_rel_tol(self.rel_tol)
            .expect("rel_tol validated")
    }
}

fn output(args: &OutputArgs) -> Result<(Format, Option<PathBuf>, Option<usize>)> {
    if args.threads == Some(0) {
        return Err(CliError::config("threads", "must be at least 1"));
    }
    Ok((args.format, args.out.clone(), args.threads))
}

fn check_rel_tol(rel_tol: f64) -> Result<f64> {
    QuadratureSettings::default()
        .with_rel_tol(rel_tol)
        .map(|q| q.rel_tol)
        .map_err(|e| CliError::config("rel-tol", e.to_string()))
}

fn positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::config(field, format!("{value} must be finite and positive")))
    }
}

/// Expands `lo:hi:n` (um) into `n` ascending gaps.
pub fn parse_gap_range(spec: &str, log_spacing: bool) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(CliError::config("gap-range", format!("expected lo:hi:n, got {spec:?}")));
    };
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::config("gap-range", format!("{s:?} is not a number")))
    };
    let (lo, hi) = (positive("gap-range", number(lo)?)?, positive("gap-range", number(hi)?)?);
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| CliError::config("gap-range", format!("{n:?} is not a point count")))?;
    match n {
        0 => Err(CliError::config("gap-range", "the range is empty (n = 0)")),
        1 if lo == hi => Ok(vec![lo]),
        1 => Err(CliError::config("gap-range", "a single point needs lo == hi")),
        _ if hi <= lo => Err(CliError::config(
            "gap-range",
            format!("must be ascending, got {lo} > {hi}"),
        )),
        _ => {
            let last = (n - 1) as f64;
            let mut gaps: Vec<f64> = (0..n)
                .map(|i| {
                    if log_spacing {
                        lo * (hi / lo).powf(i as f64 / last)
                    } else {
                        (lo * (last - i as f64) + hi * i as f64) / last
                    }
                })
                .collect();
            gaps[n - 1] = hi;
            Ok(gaps)
        }
    }
}
