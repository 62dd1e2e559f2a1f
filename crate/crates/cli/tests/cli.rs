use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn domino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domino"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_eight_spins_passes() {
    let out = domino(&["validate", "--n", "8"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("subspace vs exact-secular"));
    assert!(text.contains("subspace vs closed-form"));
    for line in text.lines() {
        let dev: f64 = line
            .split("max deviation ")
            .nth(1)
            .and_then(|s| s.split(',').next())
            .unwrap()
            .parse()
            .unwrap();
        assert!(dev < 1e-10, "{line}");
    }
}

#[test]
fn rotating_frame_validation_uses_the_tolerance() {
    let loose = domino(&[
        "validate",
        "--n",
        "5",
        "--engine",
        "exact-rotframe",
        "--j",
        "40",
        "--tolerance",
        "0.1",
    ]);
    assert_eq!(code(&loose), 0);
    let tight = domino(&[
        "validate",
        "--n",
        "5",
        "--engine",
        "exact-rotframe",
        "--j",
        "40",
        "--tolerance",
        "1e-10",
    ]);
    assert_eq!(code(&tight), 1);
    assert!(String::from_utf8(tight.stdout).unwrap().contains("FAILED"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["simulate"][..],
        &["simulate", "--n", "8", "--format", "xml"],
        &["simulate", "--n", "8", "--tau-step", "-1"],
        &["simulate", "--n", "30", "--engine", "exact-secular"],
        &[
            "validate",
            "--n",
            "6",
            "--engine",
            "exact-rotframe",
            "--j",
            "5",
        ],
        &[
            "simulate",
            "--n",
            "6",
            "--engine",
            "closed-form",
            "--initial",
            "psi0",
        ],
        &["simulate", "--n", "6", "--initial", "super:1,0,1,0"],
        &["peak", "--n", "10,12"],
    ] {
        assert_eq!(code(&domino(args)), 2, "{args:?}");
    }
}

#[test]
fn unwritable_output_reports_the_path() {
    let out = domino(&["simulate", "--n", "5", "--out", "/nonexistent/dir/s.csv"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("/nonexistent/dir/s.csv"));
}

#[test]
fn series_and_snapshot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let status = domino(&[
        "simulate",
        "--n",
        "3",
        "--tau-max",
        "2",
        "--snapshots",
        "0,1.5",
        "--out",
        path_arg(&out),
    ]);
    assert_eq!(code(&status), 0);

    let series = fs::read_to_string(&out).unwrap();
    let mut lines = series.lines();
    assert_eq!(lines.next(), Some("tau,total_polarization,delta_p"));
    assert_eq!(lines.next(), Some("0,1,0"));
    assert_eq!(lines.count(), 20);

    let first = fs::read_to_string(dir.path().join("run_snapshot_1_tau0.csv")).unwrap();
    assert_eq!(first, "site,polarization\n1,-1\n2,1\n3,1\n");
    assert!(dir.path().join("run_snapshot_2_tau1.5.csv").exists());
}

#[test]
fn first_series_row_is_initial_polarization() {
    let out = domino(&["simulate", "--n", "40", "--tau-max", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("0,38,0"));
}

#[test]
fn json_and_svg_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let svg = dir.path().join("s.svg");
    assert_eq!(
        code(&domino(&[
            "simulate",
            "--n",
            "6",
            "--snapshots",
            "2",
            "--format",
            "json",
            "--out",
            path_arg(&json)
        ])),
        0
    );
    assert_eq!(
        code(&domino(&[
            "simulate",
            "--n",
            "6",
            "--snapshots",
            "2",
            "--format",
            "svg",
            "--out",
            path_arg(&svg)
        ])),
        0
    );

    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["manifest"]["n_sites"], 6);
    assert_eq!(doc["manifest"]["engine"], "subspace");
    assert_eq!(doc["manifest"]["omega1"], 1.0);
    assert!(doc["manifest"]["tool_version"].is_string());
    assert_eq!(doc["tau"].as_array().unwrap().len(), 91);
    assert_eq!(doc["total_polarization"][0], 4.0);
    assert_eq!(
        doc["snapshots"][0]["polarization"]
            .as_array()
            .unwrap()
            .len(),
        6
    );

    let plot = fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("<polyline").count(), 1);
    assert!(dir.path().join("s_snapshot_1_tau2.svg").exists());
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for p in [&a, &b] {
            let args = [
                "simulate",
                "--n",
                "9",
                "--engine",
                "exact-secular",
                "--snapshots",
                "3",
                "--format",
                format,
                "--out",
                path_arg(p),
            ];
            assert_eq!(code(&domino(&args)), 0);
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
    let s1 = domino(&["sweep", "--n", "12,8,10"]);
    let s2 = domino(&["sweep", "--n", "12,8,10"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn sweep_table_rows_follow_input_order() {
    let out = domino(&["sweep", "--n", "25,50,75,100"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n_sites,tau_star,delta_p_star,alpha,contrast")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(
        rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
        vec![25.0, 50.0, 75.0, 100.0]
    );
    for r in &rows {
        let n = r[0];
        assert!((1.0..1.12).contains(&(r[1] / n)));
        assert!((0.80..0.92).contains(&(r[3] / n)));
    }
}

fn golden_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/series_n8_subspace.csv")
}

/// Set `UPDATE_GOLDEN=1` to rewrite the checked-in file.
#[test]
fn eight_spin_series_matches_golden() {
    let out = domino(&[
        "simulate",
        "--n",
        "8",
        "--engine",
        "subspace",
        "--tau-max",
        "20",
        "--tau-step",
        "0.1",
    ]);
    assert_eq!(code(&out), 0);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(golden_path(), &out.stdout).unwrap();
    }
    let golden = fs::read(golden_path())
        .expect("golden file present; run with UPDATE_GOLDEN=1 to create it");
    assert!(
        out.stdout == golden,
        "series differs from {}",
        golden_path().display()
    );
}
