use casimir_core::thermal::thermal_free_energy_shift;
use casimir_core::{total_pressure, DrudeParams, MaterialModel, QuadratureSettings, ThermalGapConfig};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn series_are_bit_identical_across_thread_counts() {
    let model = MaterialModel::Drude(DrudeParams::gold());
    let quad = QuadratureSettings::default();
    // small gamma so the series spans many chunks
    let cfg = ThermalGapConfig::new(20.0, 0.5e-6).unwrap();
    let run = || {
        let p = total_pressure(&cfg, &model, &quad).unwrap();
        let shift = thermal_free_energy_shift(&ThermalGapConfig::new(1e-4, 1e-6).unwrap(), &model, 40).unwrap();
        (p.total.to_bits(), p.modes_used, shift.to_bits())
    };
    let reference = in_pool(1, run);
    assert!(reference.1 > 300);
    for threads in [2, 4, 8] {
        assert_eq!(in_pool(threads, run), reference, "{threads} threads");
    }
}
