use casimir_core::geometry::{pfa_force_difference_with, pfa_force_with};
use casimir_core::lifshitz::{reflection_at_momentum, rte_from_impedance, rte_zero_frequency_comparison};
use casimir_core::thermal::{
    free_energy_difference_with, low_temperature_grid, low_temperature_quadratic_fit, pressure_difference_with,
    quadratic_coefficient_ev, te_linear_extrapolation,
};
use casimir_core::{total_pressure, MaterialModel, SpherePlateConfig, TemperaturePair, ThermalGapConfig};
use rayon::prelude::*;

use crate::config::{CommandKind, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{format_number, Meta, SweepOutput};

/// Number of Matsubara modes reported by `modes`.
pub const REPORTED_MODES: u32 = 8;

/// Reduced-frequency window `ζa/c` of the TE extrapolation.
pub const TE_WINDOW: (f64, f64) = (0.25, 0.5);
const TE_POINTS: usize = 11;
/// Temperature (K) at which the TE mode function is sampled.
pub const TE_TEMPERATURE: f64 = 300.0;

/// Runs the command on a dedicated pool when a thread count is given.
pub fn run(cfg: &RunConfig) -> Result<SweepOutput> {
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::config("threads", e.to_string()))?
            .install(|| compute(cfg)),
        None => compute(cfg),
    }
}

pub fn compute(cfg: &RunConfig) -> Result<SweepOutput> {
    let model = cfg.material.build(&cfg.constants.values)?;
    match cfg.command {
        CommandKind::Pressure => pressure(cfg, &model),
        CommandKind::Diff => diff(cfg, &model),
        CommandKind::Modes => modes(cfg, &model),
        CommandKind::SpherePlate => sphere_plate(cfg, &model),
        CommandKind::Lowtemp => lowtemp(cfg, &model),
        CommandKind::ImpedanceCheck if cfg.limits => impedance_limits(cfg, &model),
        CommandKind::ImpedanceCheck => impedance_grid(cfg, &model),
    }
}

/// Evaluates `row(a)` for every gap in parallel and gathers in input
/// order. The first failing row, in sweep order, is reported.
fn sweep<F>(cfg: &RunConfig, mut out: SweepOutput, row: F) -> Result<SweepOutput>
where
    F: Fn(f64) -> casimir_core::Result<Vec<f64>> + Sync,
{
    let results: Vec<Result<Vec<f64>>> = cfg
        .gaps_um
        .par_iter()
        .map(|&gap_um| {
            let mut values = vec![gap_um];
            values.extend(row(gap_um * 1e-6).map_err(|source| CliError::Row { gap_um, source })?);
            Ok(values)
        })
        .collect();
    for r in results {
        out.push(r?)?;
    }
    Ok(out)
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn config_at(cfg: &RunConfig, temperature: f64, gap: f64) -> casimir_core::Result<ThermalGapConfig> {
    ThermalGapConfig::with_constants(temperature, gap, cfg.constants.values)
}

fn pair(cfg: &RunConfig) -> Result<TemperaturePair> {
    TemperaturePair::new(cfg.temperatures[0], cfg.temperatures[1]).map_err(|e| CliError::config("temp", e.to_string()))
}

fn pressure(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let mut names = vec!["a_um".to_string()];
    if cfg.temperatures.len() == 1 {
        names.push("pressure_Pa".into());
    } else {
        names.extend(cfg.temperatures.iter().map(|&t| format!("pressure_Pa_{t}K")));
    }
    let mut meta = Meta::for_run(cfg);
    meta.notes
        .push("pressure_Pa is the magnitude of the attractive pressure".into());
    let quad = cfg.quadrature();
    sweep(cfg, SweepOutput::new(meta, names), |a| {
        cfg.temperatures
            .iter()
            .map(|&t| Ok(total_pressure(&config_at(cfg, t, a)?, model, &quad)?.total.abs()))
            .collect()
    })
}

fn diff(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let temps = pair(cfg)?;
    let mut meta = Meta::for_run(cfg);
    meta.notes.push(
        "delta = |X(first temperature)| - |X(second temperature)|; positive where the first temperature binds more strongly"
            .into(),
    );
    let quad = cfg.quadrature();
    let k = cfg.constants.values;
    sweep(
        cfg,
        SweepOutput::new(meta, columns(&["a_um", "delta_F_mPa", "delta_free_energy_J_per_m2"])),
        |a| {
            let (p, f) = rayon::join(
                || pressure_difference_with(a, model, temps, &quad, k),
                || free_energy_difference_with(a, model, temps, &quad, k),
            );
            Ok(vec![p?.delta * 1e3, f?.delta])
        },
    )
}

fn modes(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let mut names = vec!["a_um".to_string()];
    names.extend((0..REPORTED_MODES).map(|m| format!("m{m}_pct")));
    names.push(format!("m{REPORTED_MODES}plus_pct"));
    let quad = cfg.quadrature();
    let t = cfg.temperatures[0];
    sweep(cfg, SweepOutput::new(Meta::for_run(cfg), names), |a| {
        let series = total_pressure(&config_at(cfg, t, a)?, model, &quad)?;
        let mut shares: Vec<f64> = (0..REPORTED_MODES).map(|m| series.fraction(m)).collect();
        shares.push(
            series
                .per_mode
                .iter()
                .skip(REPORTED_MODES as usize)
                .map(|c| c.fraction)
                .sum(),
        );
        Ok(shares)
    })
}

fn sphere_plate(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let temps = pair(cfg)?;
    let radius = cfg.radius_um * 1e-6;
    let mut meta = Meta::for_run(cfg);
    meta.radius_um = Some(cfg.radius_um);
    let doubtful: Vec<String> = cfg
        .gaps_um
        .iter()
        .filter(|&&a| cfg.radius_um < 100.0 * a)
        .map(|&a| format_number(a))
        .collect();
    if !doubtful.is_empty() {
        meta.notes.push(format!(
            "proximity approximation doubtful (R < 100 a) at a_um = {}",
            doubtful.join(", ")
        ));
    }
    let quad = cfg.quadrature();
    let k = cfg.constants.values;
    sweep(
        cfg,
        SweepOutput::new(
            meta,
            columns(&["a_um", "force_low_N", "force_high_N", "delta_force_per_R_N_per_m"]),
        ),
        |a| {
            let sp = SpherePlateConfig::new(radius, a)?;
            Ok(vec![
                pfa_force_with(&sp, temps.low, model, &quad, k)?,
                pfa_force_with(&sp, temps.high, model, &quad, k)?,
                pfa_force_difference_with(&sp, model, temps, &quad, k)?,
            ])
        },
    )
}

fn lowtemp(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let k = cfg.constants.values;
    let drude = cfg.material.drude(&k)?;
    let predicted = quadratic_coefficient_ev(cfg.material.omega_p_ev, cfg.material.nu_ev);
    let mut meta = Meta::for_run(cfg);
    if cfg.temperatures.is_empty() {
        meta.notes
            .push("fit temperatures: five points on [2e-4, 1e-3] of the TE crossover temperature".into());
    }
    meta.notes.push(format!(
        "te_intercept: linear fit of the TE mode function over za/c in [{}, {}] at {} K, extrapolated to zero frequency",
        TE_WINDOW.0, TE_WINDOW.1, TE_TEMPERATURE
    ));
    let quad = cfg.quadrature();
    sweep(
        cfg,
        SweepOutput::new(
            meta,
            columns(&[
                "a_um",
                "T_min_K",
                "T_max_K",
                "coeff_eV",
                "predicted_eV",
                "residual",
                "f0_J_per_m2",
                "te_intercept",
            ]),
        ),
        |a| {
            let temps = if cfg.temperatures.is_empty() {
                low_temperature_grid(a, &drude, &k)?
            } else {
                cfg.temperatures.clone()
            };
            let fit = low_temperature_quadratic_fit(a, model, &temps, &k)?;
            let te = te_linear_extrapolation(&config_at(cfg, TE_TEMPERATURE, a)?, model, TE_WINDOW, TE_POINTS, &quad)?;
            let (t_min, t_max) = temps.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| {
                (lo.min(t), hi.max(t))
            });
            Ok(vec![
                t_min,
                t_max,
                fit.coeff_ev,
                predicted,
                fit.residual,
                fit.f0,
                te.intercept,
            ])
        },
    )
}

/// Frequencies (rad/s) and momentum ratios `q/ζ` of the equivalence grid.
pub fn impedance_grid_points() -> Vec<(f64, f64)> {
    let n = 20;
    let mut points = Vec::with_capacity(n * n);
    for i in 0..n {
        let zeta = 10_f64.powf(11.0 + 5.0 * i as f64 / (n - 1) as f64);
        for j in 0..n {
            points.push((zeta, zeta * 10_f64.powf(3.0 * j as f64 / (n - 1) as f64)));
        }
    }
    points
}

fn impedance_grid(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let t = cfg.temperatures[0];
    let mut out = SweepOutput::new(
        Meta::for_run(cfg),
        columns(&[
            "zeta_rad_per_s",
            "q_rad_per_s",
            "rte_sq_impedance",
            "B_fresnel",
            "abs_diff",
        ]),
    );
    for (zeta, q) in impedance_grid_points() {
        let row = (|| -> casimir_core::Result<Vec<f64>> {
            let eps = model.eps(zeta, t)?;
            let r = rte_from_impedance(zeta, q, eps)?;
            let b = reflection_at_momentum(zeta, q, eps)?.te;
            Ok(vec![zeta, q, r * r, b, (r * r - b).abs()])
        })()
        .map_err(CliError::Compute)?;
        out.push(row)?;
    }
    Ok(out)
}

/// Frequencies (rad/s) followed toward zero by `impedance-check --limits`.
pub fn limit_sequence() -> Vec<f64> {
    (8..=14).rev().map(|e| 10_f64.powi(e)).collect()
}

fn impedance_limits(cfg: &RunConfig, model: &MaterialModel) -> Result<SweepOutput> {
    let mut meta = Meta::for_run(cfg);
    meta.q_fixed = Some(cfg.q_fixed);
    let cmp = rte_zero_frequency_comparison(model, cfg.temperatures[0], cfg.q_fixed, &limit_sequence())?;
    let mut out = SweepOutput::new(
        meta,
        columns(&["zeta_rad_per_s", "rte_sq_momentum", "rte_sq_frequency_only"]),
    );
    for s in cmp.samples {
        out.push(vec![s.zeta, s.momentum_dependent, s.frequency_only])?;
    }
    Ok(out)
}
