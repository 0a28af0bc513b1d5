use std::path::Path;
use std::process::{Command, Output};

use dimer_core::table::SweepTable;

fn dimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimer"))
        .args(args)
        .output()
        .expect("spawn dimer")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn half_odd_plateau_value() {
    let o = dimer(&[
        "negativity",
        "--two-s",
        "3",
        "--delta",
        "1",
        "--d-over-j",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.500000000000\n");
}

#[test]
fn easy_axis_half_odd_point() {
    // easy-axis D favours the |Szt| = 1 doublet, not the zero sector
    let o = dimer(&[
        "negativity",
        "--two-s",
        "3",
        "--delta",
        "1",
        "--d-over-j",
        "-1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.250000000000\n");
}

#[test]
fn isotropic_spin_one() {
    let o = dimer(&[
        "negativity",
        "--two-s",
        "2",
        "--delta",
        "1",
        "--d-over-j",
        "0",
    ]);
    assert_eq!(stdout(&o), "0.333333333333\n");
}

#[test]
fn thermal_point_below_ground_value() {
    let o = dimer(&[
        "negativity",
        "--two-s",
        "2",
        "--delta",
        "1",
        "--d-over-j",
        "0",
        "--temperature",
        "0.5",
    ]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!(v > 0.0 && v < 1.0 / 3.0, "{v}");
}

#[test]
fn sweep_d_shape() {
    let o = dimer(&[
        "sweep-d", "--two-s", "2,4,6", "--delta", "1", "--d-min", "-1", "--d-max", "2", "--points",
        "301",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("S,D_over_J,negativity"));
    assert_eq!(lines.count(), 903);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn identical_config_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, fmt: &str| {
        let path = dir.path().join(name);
        let o = dimer(&[
            "phase-diagram",
            "--two-s",
            "4",
            "--delta-points",
            "21",
            "--points",
            "21",
            "--format",
            fmt,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv", "csv"), run("b.csv", "csv"));
    assert_eq!(run("a.json", "json"), run("b.json", "json"));
}

fn assert_same_table(a: &SweepTable, b: &SweepTable) {
    assert_eq!(a.columns(), b.columns());
    assert_eq!(a.len(), b.len());
    for (ra, rb) in a.rows().iter().zip(b.rows()) {
        for (x, y) in ra.iter().zip(rb) {
            assert!(x == y || (x.is_nan() && y.is_nan()), "{x} vs {y}");
        }
    }
}

fn round_trip(args: &[&str], path: &Path) {
    let mut full = args.to_vec();
    full.extend(["--output", path.to_str().unwrap()]);
    let o = dimer(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(path).unwrap();
    let table = SweepTable::from_csv(&text).unwrap();
    assert_eq!(table.to_csv(), text);
    assert_same_table(&SweepTable::from_csv(&table.to_csv()).unwrap(), &table);
}

#[test]
fn csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &[
            "spectrum",
            "--two-s",
            "5",
            "--delta",
            "0.7",
            "--d-over-j",
            "0.3",
        ],
        &[
            "sweep-d", "--two-s", "2,3", "--delta", "0.5", "--points", "41",
        ],
        &[
            "thermal",
            "--two-s",
            "3,4",
            "--delta",
            "1",
            "--d-over-j",
            "0.8",
            "--points",
            "30",
        ],
        &[
            "phase-diagram",
            "--two-s",
            "3",
            "--delta-points",
            "5",
            "--points",
            "7",
        ],
    ];
    for (k, args) in cases.iter().enumerate() {
        round_trip(args, &dir.path().join(format!("t{k}.csv")));
    }
}

#[test]
fn csv_matches_library_sweep() {
    use dimer_core::analysis::{negativity_vs_d, Grid};
    use dimer_core::DimerModel;
    let o = dimer(&[
        "sweep-d", "--two-s", "2,5", "--delta", "0.5", "--d-min", "-1", "--d-max", "1", "--points",
        "11",
    ]);
    let from_cli = SweepTable::from_csv(&stdout(&o)).unwrap();
    let template = DimerModel::new(1.0, 0.5, 0.0, 2).unwrap();
    let direct = negativity_vs_d(&template, &[2, 5], Grid::new(-1.0, 1.0, 11), 0.5).unwrap();
    assert_eq!(from_cli.len(), direct.len());
    for (a, b) in from_cli.rows().iter().zip(direct.rows()) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-11 * y.abs().max(1.0), "{x} vs {y}");
        }
    }
}

#[test]
fn json_mirrors_csv() {
    let args = [
        "thermal",
        "--two-s",
        "3",
        "--delta",
        "1",
        "--d-over-j",
        "0",
        "--points",
        "12",
    ];
    let csv = SweepTable::from_csv(&stdout(&dimer(&args))).unwrap();
    let mut jargs = args.to_vec();
    jargs.extend(["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&dimer(&jargs))).unwrap();
    assert_eq!(doc["config"]["subcommand"], "thermal");
    assert_eq!(doc["config"]["two_s"], serde_json::json!([3]));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.len());
    for (obj, row) in rows.iter().zip(csv.rows()) {
        for (c, v) in csv.columns().iter().zip(row) {
            assert_eq!(obj[&c.name].as_f64().unwrap(), *v);
        }
    }
}

#[test]
fn threshold_reports_flections() {
    let o = dimer(&[
        "threshold",
        "--two-s",
        "2,3",
        "--delta",
        "1",
        "--points",
        "5",
    ]);
    assert!(o.status.success());
    let t = SweepTable::from_csv(&stdout(&o)).unwrap();
    assert_eq!(t.len(), 10);
    let temps = t.column_values("T_threshold").unwrap();
    assert!(temps.iter().all(|&x| x > 0.0 && x < 50.0));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(
        err.lines().filter(|l| l.starts_with("flections")).count(),
        2
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &[
            "negativity",
            "--two-s",
            "1",
            "--delta",
            "1",
            "--d-over-j",
            "0",
        ][..],
        &["sweep-d", "--delta", "1"],
        &["nonsense"],
        &[
            "thermal",
            "--two-s",
            "2",
            "--delta",
            "1",
            "--d-over-j",
            "0",
            "--t-min",
            "-1",
        ],
        &["phase-diagram", "--two-s", "2", "--j", "-1"],
    ] {
        let o = dimer(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_1() {
    let o = dimer(&[
        "spectrum",
        "--two-s",
        "2",
        "--delta",
        "1",
        "--d-over-j",
        "0",
        "--output",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error:"));
}

#[test]
fn unresolved_threshold_exits_3_with_partial_output() {
    // the Ising point has a separable ground state, so its row survives
    let o = dimer(&[
        "threshold",
        "--two-s",
        "2",
        "--delta",
        "0,1",
        "--d-min",
        "0",
        "--d-max",
        "0",
        "--points",
        "1",
        "--t-max",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let t = SweepTable::from_csv(&stdout(&o)).unwrap();
    assert_eq!(t.rows(), &[vec![1.0, 0.0, 0.0, 0.0]]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unresolved: S=1 Delta=1 D/J=0"), "{err}");
    assert!(err.lines().last().unwrap().starts_with("error:"));
}
