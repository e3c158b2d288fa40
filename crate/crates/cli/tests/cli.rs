use std::process::{Command, Output};

use casimir_cli::output::parse_csv;
use casimir_cli::{commands, Cli, ConstantsSpec, RunConfig};
use casimir_core::geometry::pfa_force_difference;
use casimir_core::lifshitz::rte_zero_frequency_comparison;
use casimir_core::{DrudeParams, MaterialModel, QuadratureSettings, SpherePlateConfig, TemperaturePair};
use clap::Parser;

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .env_remove("CASIMIR_CONSTANTS")
        .output()
        .expect("binary runs")
}

fn table(args: &[&str]) -> (Vec<String>, Vec<Vec<f64>>) {
    let out = casimir(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    parse_csv(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn config(args: &[&str]) -> RunConfig {
    let cli = Cli::try_parse_from(std::iter::once("casimir").chain(args.iter().copied())).unwrap();
    RunConfig::from_command(&cli.command, ConstantsSpec::builtin()).unwrap()
}

fn gold() -> MaterialModel {
    MaterialModel::Drude(DrudeParams::gold())
}

#[test]
fn single_gap_gives_one_row() {
    let (cols, rows) = table(&["pressure", "--gap", "1"]);
    assert_eq!(cols, ["a_um", "pressure_Pa"]);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][1] > 0.0);
}

#[test]
fn pressure_curves_at_both_temperatures_overlap() {
    let (cols, rows) = table(&[
        "pressure",
        "--gap-range",
        "0.5:5:12",
        "--log-spacing",
        "--temp",
        "300",
        "--temp",
        "350",
    ]);
    assert_eq!(cols, ["a_um", "pressure_Pa_300K", "pressure_Pa_350K"]);
    for r in &rows {
        let spread = (r[2] / r[1] - 1.0).abs();
        // the zero mode scales with T and takes over at large gaps
        assert!(spread < 350.0 / 300.0 - 1.0, "{r:?}");
        if r[0] <= 1.0 {
            assert!(spread < 0.03, "{r:?}");
        }
    }
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
}

#[test]
fn invalid_configurations_exit_with_code_two() {
    let cases: [(&[&str], &str); 7] = [
        (&["pressure", "--gap-range", "5:0.5:10"], "gap-range"),
        (&["diff", "--gap-range", "1:2:0"], "gap-range"),
        (&["pressure"], "gap"),
        (&["pressure", "--gap", "1", "--model", "table"], "table"),
        (&["diff", "--gap", "1", "--temp", "300"], "temp"),
        (&["lowtemp", "--gap", "1", "--model", "plasma"], "model"),
        (&["pressure", "--gap", "1", "--rel-tol", "0.1"], "rel-tol"),
    ];
    for (args, field) in cases {
        let out = casimir(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(&format!("invalid {field}")), "{args:?}: {err}");
    }
    assert_eq!(
        casimir(&["pressure", "--model", "copper", "--gap", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn rejected_fit_exits_with_code_three() {
    let out = casimir(&[
        "lowtemp", "--gap", "1", "--temp", "50", "--temp", "75", "--temp", "100", "--temp", "125", "--temp", "150",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a = 1 um"));
}

#[test]
fn difference_changes_sign_once() {
    let (cols, rows) = table(&["diff", "--gap-range", "0.3:5:24", "--log-spacing"]);
    assert_eq!(cols, ["a_um", "delta_F_mPa", "delta_free_energy_J_per_m2"]);
    let flips = rows.windows(2).filter(|w| w[0][1].signum() != w[1][1].signum()).count();
    assert_eq!(flips, 1);
    assert!(rows[0][1] > 0.0);
}

#[test]
fn csv_round_trips_bit_exactly() {
    let cfg = config(&["diff", "--gap-range", "0.3:5:7"]);
    let out = commands::run(&cfg).unwrap();
    let (cols, rows) = parse_csv(&out.to_csv()).unwrap();
    assert_eq!(cols, out.columns);
    for (a, b) in rows.iter().flatten().zip(out.rows.iter().flatten()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn mode_shares_match_the_layout() {
    let (cols, rows) = table(&["modes", "--gap", "1", "--gap", "5"]);
    assert_eq!(cols.len(), 10);
    assert_eq!((cols[1].as_str(), cols[9].as_str()), ("m0_pct", "m8plus_pct"));
    for r in &rows {
        let sum: f64 = r[1..].iter().sum();
        assert!((sum - 100.0).abs() < 0.01);
    }
    let argmax = (1..9).max_by(|&i, &j| rows[0][i].total_cmp(&rows[0][j])).unwrap();
    assert_eq!(argmax - 1, 1);
    assert!((rows[1][1] - 96.58).abs() < 2.0 && (rows[1][2] - 3.42).abs() < 2.0);
}

#[test]
fn sphere_plate_matches_the_library() {
    let (cols, rows) = table(&["sphere-plate", "--gap", "0.8", "--radius", "150"]);
    assert_eq!(
        cols,
        ["a_um", "force_low_N", "force_high_N", "delta_force_per_R_N_per_m"]
    );
    let sp = SpherePlateConfig::new(150e-6, 0.8e-6).unwrap();
    let direct =
        pfa_force_difference(&sp, &gold(), TemperaturePair::default(), &QuadratureSettings::default()).unwrap();
    assert_eq!(rows[0][3], direct);
}

#[test]
fn impedance_grid_agrees_and_limits_match_the_library() {
    let (cols, rows) = table(&["impedance-check"]);
    assert_eq!(cols[4], "abs_diff");
    assert_eq!(rows.len(), 400);
    assert!(rows.iter().all(|r| r[4] < 1e-12));

    let (_, rows) = table(&["impedance-check", "--limits"]);
    let direct = rte_zero_frequency_comparison(&gold(), 300.0, 1e14, &commands::limit_sequence()).unwrap();
    let last = rows.last().unwrap();
    assert_eq!((last[1], last[2]), direct.limits());
}

#[test]
fn lowtemp_reports_the_quadratic_law() {
    let (cols, rows) = table(&["lowtemp", "--gap", "1"]);
    let coeff = rows[0][cols.iter().position(|c| c == "coeff_eV").unwrap()];
    let predicted = rows[0][cols.iter().position(|c| c == "predicted_eV").unwrap()];
    assert!((coeff / predicted - 1.0).abs() < 0.1);
    let intercept = rows[0][cols.iter().position(|c| c == "te_intercept").unwrap()];
    assert!((intercept.abs() / 0.30 - 1.0).abs() < 0.1);
}

#[test]
fn json_embeds_reproduction_metadata() {
    let out = casimir(&["diff", "--gap", "1", "--format", "json", "--nu-model", "bg"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["constants_version"], "CODATA-2018");
    assert_eq!(doc["meta"]["model"]["nu_model"], "bg");
    assert_eq!(doc["meta"]["model"]["omega_p_ev"], 9.0);
    assert_eq!(doc["meta"]["temperatures_K"][1], 350.0);
    assert!(doc["rows"][0]["delta_F_mPa"].as_f64().unwrap() > 0.0);
}

#[test]
fn constants_can_be_overridden_for_testing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("constants.toml");
    std::fs::write(
        &path,
        "version = \"test-set\"\nhbar = 1.054571817e-34\nc = 2.99792458e8\nk_b = 1.380649e-23\nelectron_volt = 1.602176634e-19\n",
    )
    .unwrap();
    let run = |p: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_casimir"))
            .args(["pressure", "--gap", "1"])
            .env("CASIMIR_CONSTANTS", p)
            .output()
            .unwrap()
    };
    let out = run(&path);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"constants_version\":\"test-set\""));
    let default = String::from_utf8(casimir(&["pressure", "--gap", "1"]).stdout).unwrap();
    assert_eq!(text.lines().last(), default.lines().last());

    std::fs::write(&path, "hbar = -1\n").unwrap();
    assert_eq!(run(&path).status.code(), Some(2));
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let out = casimir(&["pressure", "--gap", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let (_, rows) = parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows[0][0], 2.0);
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    let run = |threads: &str| {
        let out = casimir(&[
            "diff",
            "--gap-range",
            "0.3:5:9",
            "--log-spacing",
            "--threads",
            threads,
            "--format",
            "json",
        ]);
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    assert_eq!(run("4"), one);
    assert_eq!(run("8"), one);
}
