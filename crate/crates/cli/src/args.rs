use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Finite-temperature Casimir pressure, free energy and force sweeps.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnitude of the plate-plate pressure versus gap.
    Pressure(SweepArgs),
    /// Pressure and free-energy differences between two temperatures.
    Diff(SweepArgs),
    /// Percentage carried by the Matsubara modes m = 0..7 and by the rest.
    Modes(SweepArgs),
    /// Sphere-plate force in the proximity approximation.
    SpherePlate(SweepArgs),
    /// Low-temperature quadratic law and the TE zero-mode extrapolation.
    Lowtemp(SweepArgs),
    /// Impedance form of the TE reflection against the Fresnel form.
    ImpedanceCheck(ImpedanceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Drude,
    Plasma,
    Ideal,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NuModel {
    Constant,
    Bg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroMode {
    DrudeLike,
    PlasmaLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct MaterialArgs {
    #[arg(long, value_enum, default_value = "drude")]
    pub model: ModelKind,

    /// Plasma frequency (eV).
    #[arg(long, default_value_t = 9.0)]
    pub omega_p: f64,

    /// Relaxation frequency (eV); the 300 K calibration value for `bg`.
    #[arg(long, default_value_t = 0.035)]
    pub nu: f64,

    #[arg(long, value_enum, default_value = "constant")]
    pub nu_model: NuModel,

    /// Debye temperature (K) for the Bloch-Gruneisen relaxation.
    #[arg(long, default_value_t = 170.0)]
    pub theta_d: f64,

    /// CSV file with header `zeta_rad_per_s,epsilon`.
    #[arg(long)]
    pub table: Option<PathBuf>,

    /// Zero-frequency behaviour of the tabulated data.
    #[arg(long, value_enum)]
    pub zero_mode: Option<ZeroMode>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Gap (um); repeat for several.
    #[arg(long, conflicts_with = "gap_range")]
    pub gap: Vec<f64>,

    /// Gap sweep `lo:hi:n` in um.
    #[arg(long)]
    pub gap_range: Option<String>,

    /// Space the sweep geometrically.
    #[arg(long, requires = "gap_range")]
    pub log_spacing: bool,

    /// Temperature (K); repeat for several.
    #[arg(long = "temp")]
    pub temps: Vec<f64>,

    /// Sphere radius (um).
    #[arg(long, default_value_t = 100.0)]
    pub radius: f64,

    /// Relative tolerance of each quadrature and of the mode series.
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ImpedanceArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Temperature (K) at which the permittivity is evaluated.
    #[arg(long = "temp", default_value_t = 300.0)]
    pub temp: f64,

    /// Transverse magnitude (rad/s) held fixed for `--limits`.
    #[arg(long, default_value_t = 1e14)]
    pub q: f64,

    /// Follow |r_TE|^2 as zeta -> 0 instead of sampling the grid.
    #[arg(long)]
    pub limits: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}
