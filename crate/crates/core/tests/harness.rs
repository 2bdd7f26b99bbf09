use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liewords"))
        .args(args)
        .arg("--output")
        .arg(out)
        .env_remove("LIEWORDS_THREADS")
        .output()
        .unwrap()
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

fn read_dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn lowerbound_reports_k_lower() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(&["lowerbound", "--n", "2", "--r", "0.01", "--m", "40"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let k = summary(d.path())["results"]["k_lower"].as_f64().unwrap();
    assert!((k - 1.25).abs() < 0.01, "{k}");
}

#[test]
fn weyl_su2_ratio() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(&["weyl", "--group", "su2", "--lambda", "1e4"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let r = summary(d.path())["results"]["ratio"].as_f64().unwrap();
    assert!((r - 1.0 / 3.0).abs() < 0.01, "{r}");
    assert!(d.path().join("weyl.csv").exists());
}

#[test]
fn gap_writes_one_row_per_trial() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(
        &["gap", "--group", "su2", "--k", "16", "--trials", "200", "--seed", "1"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_path(d.path().join("trials.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 200);
    let h = rd.headers().unwrap().clone();
    let gi = h.iter().position(|c| c == "gap").unwrap();
    assert!(rows.iter().all(|r| r[gi].parse::<f64>().unwrap() <= 1.0));
    let s = summary(d.path());
    assert_eq!(s["passed"], Value::Bool(true));
    for c in s["checks"].as_array().unwrap() {
        for key in ["paper_bound", "measured", "holds"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn discrepancy_sweep_is_monotone() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(
        &[
            "discrepancy",
            "--group",
            "torus",
            "--n",
            "2",
            "--k",
            "8",
            "--ell-max",
            "40",
            "--t",
            "0.05",
            "--trials",
            "3",
            "--seed",
            "3",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_path(d.path().join("sweep.csv")).unwrap();
    let vals: Vec<f64> = rd.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    assert_eq!(vals.len(), 41);
    assert!(vals.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn reruns_are_byte_identical_across_threads() {
    let args = [
        "cover", "--group", "torus", "--n", "1", "--r", "0.1", "--trials", "6", "--seed", "11",
    ];
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    cli(&args, a.path());
    cli(&args, b.path());
    let mut with_threads = args.to_vec();
    with_threads.extend(["--threads", "3"]);
    cli(&with_threads, c.path());
    assert_eq!(read_dir_bytes(a.path()), read_dir_bytes(b.path()));
    assert_eq!(read_dir_bytes(a.path()), read_dir_bytes(c.path()));
}

#[test]
fn threads_env_var_is_honoured() {
    let d = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_liewords"))
        .args([
            "gap", "--group", "su2", "--k", "4", "--trials", "4", "--seed", "2", "--output",
        ])
        .arg(d.path())
        .env("LIEWORDS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_liewords"))
        .args([
            "gap", "--group", "su2", "--k", "4", "--trials", "4", "--seed", "2", "--output",
        ])
        .arg(d.path())
        .env("LIEWORDS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(&["gap", "--group", "su2", "--k", "4"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("master_seed"));
    let o = cli(
        &["cover", "--group", "torus", "--n", "1", "--r", "1.5", "--seed", "1"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('r'));
    let o = cli(&["frobnicate"], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_cap_exits_three() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(
        &[
            "gap", "--group", "torus", "--n", "3", "--k", "4", "--cutoff", "1e9", "--trials", "1", "--seed", "1",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn failing_invariant_exits_one() {
    // the log-log heat slope on T1 falls short of -n/4
    let d = tempfile::tempdir().unwrap();
    let o = cli(&["heat", "--group", "torus", "--n", "1"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(summary(d.path())["passed"], Value::Bool(false));
}

#[test]
fn config_file_with_flag_override() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"command":"gap","group":"su2","k":6,"trials":7,"master_seed":4}"#,
    )
    .unwrap();
    let out = d.path().join("out");
    let o = cli(&["gap", "--config", cfg.to_str().unwrap(), "--trials", "5"], &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(&out);
    assert_eq!(s["master_seed"], 4);
    assert_eq!(
        csv::Reader::from_path(out.join("trials.csv"))
            .unwrap()
            .records()
            .count(),
        5
    );

    std::fs::write(&cfg, r#"{"group":"su2","bogus":1}"#).unwrap();
    let o = cli(&["gap", "--config", cfg.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gnuplot_script_on_request() {
    let d = tempfile::tempdir().unwrap();
    let o = cli(
        &["weyl", "--group", "torus", "--n", "2", "--lambda", "1e4", "--gnuplot"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let s = std::fs::read_to_string(d.path().join("plot.gp")).unwrap();
    assert!(s.contains("weyl.csv"));
}
