//! End-to-end checks of the `qtt` binary: CSV products, determinism,
//! config handling, and exit codes.

use std::path::Path;
use std::process::Command;

use qtt_core::report::FigureTable;

fn qtt() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qtt"))
}

fn read_table(dir: &Path, name: &str) -> FigureTable {
    let text = std::fs::read_to_string(dir.join(name)).expect(name);
    FigureTable::from_csv(&text).unwrap()
}

#[test]
fn tables_verb_reproduces_turning_points() {
    let out = tempfile::tempdir().unwrap();
    let status = qtt()
        .args(["tables", "--out"])
        .arg(out.path())
        .args(["--intensities", "1.08e14,6.12e14"])
        .status()
        .unwrap();
    assert!(status.success());

    let table = read_table(out.path(), "turning_points.csv");
    assert_eq!(table.rows.len(), 6);
    let eta_r = table.numeric_column("eta_R");
    let atoms: Vec<&str> = table.rows.iter().map(|r| r[0].as_text().unwrap()).collect();
    let he_low = atoms
        .iter()
        .zip(table.numeric_column("intensity_Wcm2"))
        .position(|(a, i)| *a == "He" && (i - 1.08e14).abs() < 1.0)
        .unwrap();
    assert!((eta_r[he_low] - 42.0210).abs() / 42.0210 < 1e-3);
}

#[test]
fn atom_verb_is_deterministic() {
    let run = || {
        let out = tempfile::tempdir().unwrap();
        let status = qtt()
            .args(["atom", "--atoms", "Kr", "--intensities", "6.12e14", "--out"])
            .arg(out.path())
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out.path().join("time_vs_intensity.csv")).unwrap()
    };
    assert_eq!(run(), run(), "two identical runs differ byte-wise");
}

#[test]
fn trajectories_marked_and_continuous() {
    let out = tempfile::tempdir().unwrap();
    let status = qtt()
        .args([
            "atom",
            "--trajectories",
            "--atoms",
            "Kr",
            "--intensities",
            "6.12e14",
            "--out",
        ])
        .arg(out.path())
        .status()
        .unwrap();
    assert!(status.success());
    let table = read_table(out.path(), "trajectory_Kr_6p12e14.csv");
    let regions: Vec<&str> = table.rows.iter().map(|r| r[2].as_text().unwrap()).collect();
    let boundary = regions.iter().position(|&r| r == "III").unwrap();
    let etas = table.numeric_column("eta");
    let times = table.numeric_column("time_as");
    assert_eq!(
        etas[boundary - 1],
        etas[boundary],
        "exit row not duplicated"
    );
    assert!((times[boundary] - times[boundary - 1]).abs() < 1e-4);
    assert!(times.windows(2).all(|w| w[1] >= w[0] - 1e-6));
}

#[test]
fn config_file_and_overlay_round_trip() {
    let out = tempfile::tempdir().unwrap();
    let config_path = out.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{"atoms": ["He"], "intensities_wcm2": [1.08e14, 6.12e14]}"#,
    )
    .unwrap();

    // First produce the model-only curve, then feed it back as "data".
    let status = qtt()
        .args(["atom", "--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(out.path())
        .status()
        .unwrap();
    assert!(status.success());
    let model = read_table(out.path(), "time_vs_intensity.csv");

    let data_path = out.path().join("measured.csv");
    let mut csv = String::from("intensity_Wcm2,time_as,error_as,instrument\n");
    for row in &model.rows {
        csv.push_str(&format!(
            "{:e},{:e},4.0,synthetic\n",
            row[1].as_f64().unwrap(),
            row[2].as_f64().unwrap()
        ));
    }
    std::fs::write(&data_path, csv).unwrap();

    let status = qtt()
        .args(["atom", "--config"])
        .arg(&config_path)
        .args(["--experiment"])
        .arg(&data_path)
        .args(["--out"])
        .arg(out.path())
        .status()
        .unwrap();
    assert!(status.success());
    let overlay = read_table(out.path(), "overlay_He.csv");
    for residual in overlay.numeric_column("residual_as") {
        assert_eq!(residual, 0.0);
    }
}

#[test]
fn malformed_experiment_file_fails_with_json_error() {
    let out = tempfile::tempdir().unwrap();
    let data_path = out.path().join("bad.csv");
    std::fs::write(
        &data_path,
        "intensity_Wcm2,time_as,error_as,instrument\nnope,1,2,X\n",
    )
    .unwrap();
    let output = qtt()
        .args([
            "atom",
            "--atoms",
            "He",
            "--intensities",
            "1.08e14",
            "--experiment",
        ])
        .arg(&data_path)
        .args(["--out"])
        .arg(out.path())
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    let parsed: serde_json::Value =
        serde_json::from_str(stderr.lines().last().unwrap()).expect("stderr ends with JSON");
    assert!(parsed["error"].as_str().unwrap().contains("line 2"));
}

#[test]
fn empty_atom_list_is_a_config_error() {
    let out = tempfile::tempdir().unwrap();
    let config_path = out.path().join("config.json");
    std::fs::write(&config_path, r#"{"atoms": []}"#).unwrap();
    let output = qtt()
        .args(["tables", "--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(out.path())
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("empty atom list"));
}

#[test]
fn rect_verb_emits_grid() {
    let out = tempfile::tempdir().unwrap();
    let config_path = out.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{"rect": {"v0_values": [2.0, 3.0], "widths": [0.5, 1.0, 1.5]}}"#,
    )
    .unwrap();
    let status = qtt()
        .args(["rect", "--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(out.path())
        .status()
        .unwrap();
    assert!(status.success());
    let table = read_table(out.path(), "rect_barrier_times.csv");
    assert_eq!(table.rows.len(), 6);
    // Emitted file must re-ingest to identical numbers.
    let csv = table.to_csv();
    let again = FigureTable::from_csv(&csv).unwrap();
    assert_eq!(again.to_csv(), csv);
}
