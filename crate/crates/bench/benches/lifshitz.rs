use casimir_core::lifshitz::mode_pressure;
use casimir_core::thermal::pressure_difference;
use casimir_core::{total_pressure, DrudeParams, MaterialModel, QuadratureSettings, TemperaturePair, ThermalGapConfig};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn gold() -> MaterialModel {
    MaterialModel::Drude(DrudeParams::gold())
}

fn single_mode(c: &mut Criterion) {
    let quad = QuadratureSettings::default();
    let cfg = ThermalGapConfig::new(300.0, 1e-6).unwrap();
    let model = gold();
    let mut group = c.benchmark_group("mode_pressure");
    for m in [0u32, 1, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| mode_pressure(black_box(m), &cfg, &model, &quad).unwrap())
        });
    }
    group.finish();
}

fn full_series(c: &mut Criterion) {
    let quad = QuadratureSettings::default();
    let model = gold();
    let mut group = c.benchmark_group("total_pressure");
    for a in [0.3, 1.0, 5.0] {
        let cfg = ThermalGapConfig::new(300.0, a * 1e-6).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(a), &cfg, |b, cfg| {
            b.iter(|| total_pressure(black_box(cfg), &model, &quad).unwrap())
        });
    }
    group.finish();
}

fn difference(c: &mut Criterion) {
    let quad = QuadratureSettings::default();
    let model = gold();
    c.bench_function("pressure_difference/1um", |b| {
        b.iter(|| pressure_difference(black_box(1e-6), &model, TemperaturePair::default(), &quad).unwrap())
    });
}

criterion_group!(benches, single_mode, full_series, difference);
criterion_main!(benches);
