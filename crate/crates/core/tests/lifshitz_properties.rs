use casimir_core::dispersion::eps_drude;
use casimir_core::lifshitz::{
    free_energy, mode_pressure, reflection_pair, rte_from_impedance, total_pressure, zero_frequency_reflection,
};
use casimir_core::{
    DrudeParams, MaterialModel, PermittivityTable, PlasmaParams, QuadratureSettings, ThermalGapConfig, ZeroModeClass,
};
use proptest::prelude::*;

fn um(x: f64) -> f64 {
    x * 1e-6
}

fn gold() -> MaterialModel {
    MaterialModel::Drude(DrudeParams::gold())
}

fn plasma() -> MaterialModel {
    MaterialModel::Plasma(PlasmaParams::new(9.0).unwrap())
}

fn gold_table(zero_mode: ZeroModeClass) -> MaterialModel {
    let d = DrudeParams::gold();
    let points = (0..=60)
        .map(|i| {
            let z = 10_f64.powf(11.0 + 0.1 * i as f64);
            (z, eps_drude(z, &d, 300.0).unwrap())
        })
        .collect();
    MaterialModel::Tabulated {
        table: PermittivityTable::new(points).unwrap(),
        zero_mode,
    }
}

proptest! {
    #[test]
    fn reflections_are_bounded_and_tm_dominates(
        m in 1u32..200,
        p in 1.0_f64..100.0,
        log_chi in -4.0_f64..6.0,
        a in 0.1_f64..10.0,
    ) {
        let cfg = ThermalGapConfig::new(300.0, um(a)).unwrap();
        let y = p * m as f64 * cfg.gamma();
        let r = reflection_pair(y, m, &cfg, 1.0 + 10_f64.powf(log_chi)).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.tm));
        prop_assert!((0.0..=1.0).contains(&r.te));
        prop_assert!(r.te <= r.tm);
    }

    #[test]
    fn zero_mode_reflections_are_bounded(y in 1e-6_f64..40.0) {
        let cfg = ThermalGapConfig::new(300.0, um(1.0)).unwrap();
        for model in [gold(), plasma(), MaterialModel::Ideal] {
            let r = zero_frequency_reflection(&model, y, &cfg);
            prop_assert!((0.0..=1.0).contains(&r.tm));
            prop_assert!((0.0..=1.0).contains(&r.te));
            prop_assert!(r.te <= r.tm);
        }
    }

    #[test]
    fn impedance_form_reproduces_te_reflection(log_zeta in 11.0_f64..17.0, ratio in 1.0_f64..1e3) {
        let cfg = ThermalGapConfig::new(300.0, um(1.0)).unwrap();
        let zeta = 10_f64.powf(log_zeta);
        let q = zeta * ratio;
        let eps = gold().eps(zeta, 300.0).unwrap();
        // same momentum through the dimensionless variables
        let m = 1;
        let scaled = ThermalGapConfig::new(300.0 * zeta / cfg.matsubara(1), um(1.0)).unwrap();
        let y = ratio * m as f64 * scaled.gamma();
        let b = reflection_pair(y, m, &scaled, eps).unwrap().te;
        let r = rte_from_impedance(zeta, q, eps).unwrap();
        prop_assert!((r * r - b).abs() < 1e-12);
    }
}

#[test]
fn every_mode_is_attractive_and_high_modes_fade() {
    let quad = QuadratureSettings::default();
    let models = [
        gold(),
        plasma(),
        MaterialModel::Ideal,
        gold_table(ZeroModeClass::DrudeLike),
        gold_table(ZeroModeClass::PlasmaLike),
    ];
    for model in &models {
        let cfg = ThermalGapConfig::new(300.0, um(1.0)).unwrap();
        let values: Vec<f64> = (0..40).map(|m| mode_pressure(m, &cfg, model, &quad).unwrap()).collect();
        assert!(values.iter().all(|&v| v < 0.0), "{}: {values:?}", model.name());
        for w in values[5..].windows(2) {
            assert!(w[1].abs() < w[0].abs(), "{}: {values:?}", model.name());
        }
    }
}

#[test]
fn pressure_magnitude_falls_with_gap() {
    let quad = QuadratureSettings::default();
    for model in [gold(), plasma()] {
        let mut previous = f64::INFINITY;
        for i in 0..12 {
            let a = 0.3 * (5.0_f64 / 0.3).powf(i as f64 / 11.0);
            let cfg = ThermalGapConfig::new(300.0, um(a)).unwrap();
            let p = total_pressure(&cfg, &model, &quad).unwrap().total.abs();
            assert!(p < previous, "{} at {a} um", model.name());
            previous = p;
        }
    }
}

#[test]
fn pressure_is_minus_free_energy_gradient() {
    let quad = QuadratureSettings::default().with_rel_tol(1e-12).unwrap();
    for a in [0.3, 0.7, 1.5, 3.0, 5.0] {
        let gap = um(a);
        let h = 1e-3 * gap;
        let f = |x: f64| free_energy(&ThermalGapConfig::new(300.0, x).unwrap(), &gold(), &quad).unwrap();
        let gradient = -(f(gap + h) - f(gap - h)) / (2.0 * h);
        let cfg = ThermalGapConfig::new(300.0, gap).unwrap();
        let p = total_pressure(&cfg, &gold(), &quad).unwrap().total;
        assert!((gradient / p - 1.0).abs() < 1e-4, "a = {a} um: {gradient} vs {p}");
    }
}

#[test]
fn tolerance_change_barely_moves_pressure() {
    let tight = QuadratureSettings::default();
    let loose = tight.with_rel_tol(1e-8).unwrap();
    for a in [0.5, 2.0, 5.0] {
        let cfg = ThermalGapConfig::new(300.0, um(a)).unwrap();
        let p1 = total_pressure(&cfg, &gold(), &tight).unwrap().total;
        let p2 = total_pressure(&cfg, &gold(), &loose).unwrap().total;
        assert!((p1 / p2 - 1.0).abs() < 1e-7, "a = {a} um");
    }
}

#[test]
fn mode_shares_follow_the_published_breakdown() {
    let quad = QuadratureSettings::default();
    // gap (um), percentages for m = 0, 1, ...
    let rows: [(f64, &[f64]); 8] = [
        (0.5, &[10.20, 31.24, 22.95, 15.09, 9.18, 5.28, 2.91, 1.55]),
        (1.0, &[20.07, 49.37, 20.83, 6.97, 2.03, 0.54, 0.14, 0.03]),
        (2.0, &[44.56, 49.87, 5.17, 0.37, 0.02]),
        (3.0, &[70.95, 28.41, 0.63, 0.01]),
        (4.0, &[88.88, 11.07, 0.05]),
        (5.0, &[96.58, 3.42]),
        (6.0, &[99.06, 0.94]),
        (7.0, &[99.76, 0.24]),
    ];
    for (a, shares) in rows {
        let cfg = ThermalGapConfig::new(300.0, um(a)).unwrap();
        let series = total_pressure(&cfg, &gold(), &quad).unwrap();
        let sum: f64 = series.per_mode.iter().map(|c| c.fraction).sum();
        assert!((sum - 100.0).abs() < 1e-9);
        let tolerance = if a < 1.0 { 5.0 } else { 3.0 };
        for (m, &expected) in shares.iter().enumerate() {
            let got = series.fraction(m as u32);
            assert!(
                (got - expected).abs() < tolerance,
                "a = {a} um, m = {m}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn first_mode_dominates_at_one_micron() {
    let cfg = ThermalGapConfig::new(300.0, um(1.0)).unwrap();
    let series = total_pressure(&cfg, &gold(), &QuadratureSettings::default()).unwrap();
    assert_eq!(series.dominant_mode(), Some(1));
}

#[test]
fn drude_like_table_tracks_the_drude_model() {
    let quad = QuadratureSettings::default();
    let cfg = ThermalGapConfig::new(300.0, um(2.0)).unwrap();
    let direct = total_pressure(&cfg, &gold(), &quad).unwrap().total;
    let tabulated = total_pressure(&cfg, &gold_table(ZeroModeClass::DrudeLike), &quad)
        .unwrap()
        .total;
    assert!((tabulated / direct - 1.0).abs() < 1e-3, "{tabulated} vs {direct}");
}
