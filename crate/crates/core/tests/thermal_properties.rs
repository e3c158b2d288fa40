use casimir_core::dispersion::GOLD_DEBYE_TEMPERATURE;
use casimir_core::thermal::{
    low_temperature_grid, low_temperature_quadratic_fit, pressure_difference, quadratic_coefficient_ev,
    sign_change_gap, te_crossover_temperature,
};
use casimir_core::{
    total_pressure, CasimirError, DrudeParams, MaterialModel, QuadratureSettings, RelaxationModel, TemperaturePair,
    ThermalGapConfig, CODATA_2018,
};

fn um(x: f64) -> f64 {
    x * 1e-6
}

fn gold() -> MaterialModel {
    MaterialModel::Drude(DrudeParams::gold())
}

fn gold_bg() -> MaterialModel {
    let bg = RelaxationModel::bloch_gruneisen(GOLD_DEBYE_TEMPERATURE, 0.035, 300.0).unwrap();
    MaterialModel::Drude(DrudeParams::new(9.0, bg).unwrap())
}

fn delta(a: f64, model: &MaterialModel) -> f64 {
    pressure_difference(um(a), model, TemperaturePair::default(), &QuadratureSettings::default())
        .unwrap()
        .delta
}

#[test]
fn difference_is_positive_at_small_gaps_and_negative_at_large() {
    for a in [0.3, 0.5, 1.0, 1.5, 2.0] {
        assert!(delta(a, &gold()) > 0.0, "a = {a} um");
    }
    for a in [3.2, 3.5, 4.0, 4.5, 5.0] {
        assert!(delta(a, &gold()) < 0.0, "a = {a} um");
    }
}

#[test]
fn swapping_temperatures_negates_the_difference() {
    let quad = QuadratureSettings::default();
    let pair = TemperaturePair::default();
    for a in [0.5, 2.8, 4.0] {
        let d = pressure_difference(um(a), &gold(), pair, &quad).unwrap().delta;
        let s = pressure_difference(um(a), &gold(), pair.swapped(), &quad)
            .unwrap()
            .delta;
        assert_eq!(d, -s);
    }
}

#[test]
fn pressure_is_not_monotonic_in_temperature() {
    let quad = QuadratureSettings::default();
    let p = |t: f64, a: f64| {
        total_pressure(&ThermalGapConfig::new(t, um(a)).unwrap(), &gold(), &quad)
            .unwrap()
            .total
            .abs()
    };
    assert!(p(250.0, 2.0) > p(300.0, 2.0));
    assert!(p(500.0, 3.0) > p(400.0, 3.0));
}

#[test]
fn temperature_dependent_damping_leaves_the_difference_nearly_unchanged() {
    for a in [2.0, 2.2] {
        let (c, b) = (delta(a, &gold()), delta(a, &gold_bg()));
        assert!((b / c - 1.0).abs() < 0.02, "a = {a} um: {b} vs {c}");
    }
    let quad = QuadratureSettings::default();
    let pair = TemperaturePair::default();
    let root_c = sign_change_gap(&gold(), pair, (um(2.5), um(3.1)), &quad).unwrap();
    let root_b = sign_change_gap(&gold_bg(), pair, (um(2.0), um(3.5)), &quad).unwrap();
    assert!((root_b - root_c).abs() < um(0.05), "{root_b} vs {root_c}");
}

#[test]
fn sign_change_needs_a_bracket() {
    let err = sign_change_gap(
        &gold(),
        TemperaturePair::default(),
        (um(0.5), um(1.0)),
        &QuadratureSettings::default(),
    );
    assert!(matches!(err, Err(CasimirError::Bracket { .. })));
}

#[test]
fn quadratic_coefficient_survives_a_finer_grid() {
    let d = DrudeParams::gold();
    let coarse = low_temperature_grid(um(1.0), &d, &CODATA_2018).unwrap();
    let fine: Vec<f64> = (0..9)
        .map(|i| coarse[0] + 0.5 * i as f64 * (coarse[1] - coarse[0]))
        .collect();
    let c1 = low_temperature_quadratic_fit(um(1.0), &gold(), &coarse, &CODATA_2018)
        .unwrap()
        .coeff_ev;
    let c2 = low_temperature_quadratic_fit(um(1.0), &gold(), &fine, &CODATA_2018)
        .unwrap()
        .coeff_ev;
    assert!((c1 / c2 - 1.0).abs() < 1e-2, "{c1} vs {c2}");
    let predicted = quadratic_coefficient_ev(9.0, 0.035);
    assert!((c1 / predicted - 1.0).abs() < 0.1);
}

#[test]
fn ideal_metal_is_not_quadratic() {
    let tc = te_crossover_temperature(um(1.0), &DrudeParams::gold(), &CODATA_2018).unwrap();
    let grid: Vec<f64> = (1..=5).map(|i| 2e-4 * tc * i as f64).collect();
    let fit = low_temperature_quadratic_fit(um(1.0), &MaterialModel::Ideal, &grid, &CODATA_2018);
    assert!(matches!(fit, Err(CasimirError::Fit { .. })));
}
