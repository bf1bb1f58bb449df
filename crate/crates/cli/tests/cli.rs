use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gaussent_cli::csv::{parse_rows, TRAJECTORY_HEADER};

const COL_TAU: usize = 0;
const COL_NEGATIVITY: usize = 7;
const COL_PURITY: usize = 8;

fn gaussent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().next(), Some(TRAJECTORY_HEADER));
    parse_rows(&text)
}

fn column(rows: &[Vec<f64>], col: usize) -> Vec<f64> {
    rows.iter().map(|r| r[col]).collect()
}

#[test]
fn trajectory_initial_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let status = gaussent(&[
        "trajectory",
        "--model",
        "common",
        "--r",
        "1",
        "--nbar",
        "0.5",
        "--points",
        "5",
        "--out",
        out,
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let data = rows(&dir.path().join("trajectory_common_r1_nbar0.5.csv"));
    assert_eq!(data.len(), 5);
    assert_eq!(data[0][COL_TAU], 0.0);
    assert!((data[0][COL_NEGATIVITY] - 2.885390).abs() < 1e-6);
    assert_eq!(data[0][COL_PURITY], 1.0);
}

#[test]
fn trajectory_unsqueezed_has_no_negativity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(
        gaussent(&["trajectory", "--r", "0", "--nbar", "0,0.5,4", "--out", out])
            .status
            .success()
    );
    for nbar in ["0", "0.5", "4"] {
        let data = rows(
            &dir.path()
                .join(format!("trajectory_common_r0_nbar{nbar}.csv")),
        );
        assert!(column(&data, COL_NEGATIVITY).iter().all(|e| *e == 0.0));
    }
}

#[test]
fn independent_vacuum_never_disentangles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(gaussent(&[
        "trajectory",
        "--model",
        "independent",
        "--r",
        "1",
        "--nbar",
        "0",
        "--out",
        out,
    ])
    .status
    .success());
    let data = rows(&dir.path().join("trajectory_independent_r1_nbar0.csv"));
    assert!(column(&data, COL_NEGATIVITY).iter().all(|e| *e > 0.0));
}

#[test]
fn trajectory_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = dir.path().to_str().unwrap();
        assert!(
            gaussent(&["trajectory", "--r", "0.5,2", "--nbar", "0.5", "--out", out])
                .status
                .success()
        );
    }
    for name in [
        "trajectory_common_r0.5_nbar0.5.csv",
        "trajectory_common_r2_nbar0.5.csv",
    ] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap()
        );
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["trajectory", "--nbar", "-1"],
        vec!["trajectory", "--points", "1"],
        vec!["trajectory", "--tau-max", "1.5"],
        vec!["trajectory", "--model", "shared"],
        vec!["figures", "--figure", "7"],
        vec!["figures", "--figure", "seven"],
        vec!["threshold", "--nbar", "-0.5"],
        vec!["threshold"],
        vec!["bogus"],
    ] {
        let out = gaussent(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = gaussent(&[
        "trajectory",
        "--r",
        "1",
        "--nbar",
        "0.5",
        "--out",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn threshold_output() {
    let out = gaussent(&["threshold", "--nbar", "0.5", "--r", "0.1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("r* = 0.346573590280"), "{text}");
    assert!(text.contains("disentangles at γt ≈ 0.208425"), "{text}");

    let text = String::from_utf8(gaussent(&["threshold", "--nbar", "0"]).stdout).unwrap();
    assert!(text.contains("r* = 0.000000000000"), "{text}");
}

#[test]
fn validate_exit_status() {
    let out = gaussent(&[
        "validate", "--r", "0.5,1", "--nbar", "0,0.5", "--points", "20",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let out = gaussent(&[
        "validate",
        "--r",
        "1",
        "--nbar",
        "0.5",
        "--points",
        "20",
        "--debug-drop-diffusion-rate",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle-agreement"));

    let out = gaussent(&[
        "validate", "--r", "1", "--nbar", "0.5", "--points", "20", "--dt", "0.1",
    ]);
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("oracle-agreement"));
    assert_eq!(out.status.code(), Some(1), "{report}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    let out = dir.path().join("out");
    fs::write(
        &config,
        format!(
            "model = independent\nr = 1\nnbar = 0.5\npoints = 7\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let status = gaussent(&[
        "trajectory",
        "--config",
        config.to_str().unwrap(),
        "--points",
        "3",
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let data = rows(&out.join("trajectory_independent_r1_nbar0.5.csv"));
    assert_eq!(data.len(), 3);
}

fn manifest_files(dir: &Path, id: u8) -> Vec<String> {
    let text = fs::read_to_string(dir.join(format!("fig{id}_manifest.csv"))).unwrap();
    text.lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect()
}

#[test]
fn figure_manifests_are_complete() {
    let dir = tempfile::tempdir().unwrap();
    let out = gaussent(&[
        "figures",
        "--figure",
        "all",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let emitted: BTreeSet<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            Path::new(l)
                .file_name()
                .unwrap()
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    let mut listed = BTreeSet::new();
    for id in 1..=6u8 {
        for name in manifest_files(dir.path(), id) {
            assert!(dir.path().join(&name).exists(), "{name}");
            listed.insert(name);
        }
        listed.insert(format!("fig{id}_manifest.csv"));
    }
    assert_eq!(emitted, listed);
    let on_disk: BTreeSet<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(on_disk, listed);
}

#[test]
fn figure_curves_have_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    assert!(gaussent(&[
        "figures",
        "--figure",
        "all",
        "--out",
        dir.path().to_str().unwrap()
    ])
    .status
    .success());
    let curve = |id: u8, k: usize| rows(&dir.path().join(format!("fig{id}_curve{k}.csv")));

    // figure 1: r = 0 flat at zero; r ∈ {0.5, 1, 2} still entangled at the end
    assert!(column(&curve(1, 1), COL_NEGATIVITY)
        .iter()
        .all(|e| *e == 0.0));
    for k in 3..=5 {
        assert!(*column(&curve(1, k), COL_NEGATIVITY).last().unwrap() > 0.0);
    }
    assert_eq!(*column(&curve(1, 2), COL_NEGATIVITY).last().unwrap(), 0.0);

    // figure 2: the N = e² curve sits on the threshold and decays towards 0
    let boundary = column(&curve(2, 4), COL_NEGATIVITY);
    assert!(boundary.windows(2).all(|w| w[1] <= w[0]));
    assert!(*boundary.last().unwrap() > 0.0 && *boundary.last().unwrap() < 0.01);
    assert_eq!(*column(&curve(2, 5), COL_NEGATIVITY).last().unwrap(), 0.0);

    // figure 4: every curve with N > 1 hits exactly zero at finite tau
    assert!(column(&curve(4, 1), COL_NEGATIVITY)
        .iter()
        .all(|e| *e > 0.0));
    for k in 2..=5 {
        let e = column(&curve(4, k), COL_NEGATIVITY);
        let first_zero = e.iter().position(|v| *v == 0.0).expect("reaches zero");
        assert!(e[first_zero..].iter().all(|v| *v == 0.0));
    }

    // figures 5-6: purity on a γt axis up to 5
    let fig5 = curve(5, 4);
    assert!((fig5.last().unwrap()[1] - 5.0).abs() < 1e-9);
    assert!(column(&fig5, COL_PURITY)
        .iter()
        .all(|p| *p > 0.0 && *p <= 1.0));
}
