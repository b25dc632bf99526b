use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homconn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = homconn(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn analyze_text(dir: &Path, name: &str, text: &str) -> Value {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    serde_json::from_str(&stdout(&["analyze", path.to_str().unwrap()])).unwrap()
}

#[test]
fn gen_full_and_empty() {
    assert_eq!(
        stdout(&["gen", "--n", "3", "--model", "binomial", "--p", "1", "--seed", "7"]),
        "3 1\n1 2 3\n"
    );
    assert_eq!(
        stdout(&["gen", "--n", "5", "--model", "binomial", "--p", "0", "--seed", "7"]),
        "5 0\n"
    );
}

#[test]
fn gen_is_deterministic_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        stdout(&[
            "gen",
            "--n",
            "12",
            "--p",
            "0.2",
            "--seed",
            "99",
            "--out",
            path.to_str().unwrap(),
        ]);
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    assert!(bytes.starts_with(b"12 "));
}

#[test]
fn usage_errors_exit_with_one() {
    let both = homconn(&["gen", "--n", "5", "--p", "0.5", "--m", "3"]);
    assert_eq!(both.status.code(), Some(1));
    let missing = homconn(&["gen", "--n", "5", "--model", "uniform"]);
    assert_eq!(missing.status.code(), Some(1));
    let bad_p = homconn(&["gen", "--n", "5", "--p", "1.5"]);
    assert_eq!(bad_p.status.code(), Some(1));
    assert_eq!(homconn(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(homconn(&["process", "--n", "2"]).status.code(), Some(1));
    assert_eq!(homconn(&["--help"]).status.code(), Some(0));
}

#[test]
fn runtime_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = homconn(&["analyze", dir.path().join("nope.txt").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "4 1\n1 2 9\n").unwrap();
    let out = homconn(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn analyze_single_face() {
    let dir = tempfile::tempdir().unwrap();
    let r = analyze_text(dir.path(), "one.txt", "3 1\n1 2 3\n");
    assert_eq!(r["beta0"], 0);
    assert_eq!(r["beta1"], 0);
    assert_eq!(r["hom_connected"], true);
    assert_eq!(r["M_copies"], 0);
    assert_eq!(r["isolated"], 0);
}

#[test]
fn analyze_three_faces_on_six_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let r = analyze_text(dir.path(), "three.txt", "6 3\n1 2 3\n1 4 5\n2 4 6\n");
    assert_eq!(r["beta0"], 0);
    assert_eq!(r["beta1"], 1);
    assert_eq!(r["hom_connected"], false);
    // Apexes 1 and 2 on 123, 1 and 4 on 145, 2 and 4 on 246: each has its
    // two face edges private and the other neighbours joined by the
    // remaining faces.
    assert_eq!(r["M_copies"], 6);
    // Every edge lies in exactly one face, so every rooted triple is an M'.
    assert_eq!(r["rooted_M_prime"], 9);
    assert_eq!(r["odd_cycle"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_empty_complex() {
    let dir = tempfile::tempdir().unwrap();
    let r = analyze_text(dir.path(), "empty.txt", "5 0\n");
    assert_eq!(r["beta0"], 4);
    assert_eq!(r["hom_connected"], false);
    assert_eq!(r["isolated"], 5);
}

#[test]
fn analyze_minimal_support_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("three.txt");
    fs::write(&path, "6 3\n1 2 3\n1 4 5\n2 4 6\n").unwrap();
    let r: Value = serde_json::from_str(&stdout(&[
        "analyze",
        path.to_str().unwrap(),
        "--min-support",
        "4",
    ]))
    .unwrap();
    let m = &r["minimal_bad_support"];
    assert_eq!(m["size"], 2);
    assert_eq!(m["properties"]["super_connected"], true);
    let plain: Value = serde_json::from_str(&stdout(&["analyze", path.to_str().unwrap()])).unwrap();
    assert!(plain.get("minimal_bad_support").is_none());
}

fn trace_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn process_final_row_matches_snapshot_analysis() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6u64 {
        let seed_s = seed.to_string();
        let trace = dir.path().join(format!("trace{seed}.csv"));
        let times: Value = serde_json::from_str(&stdout(&[
            "process",
            "--n",
            "10",
            "--seed",
            &seed_s,
            "--trace",
            trace.to_str().unwrap(),
        ]))
        .unwrap();
        let text = fs::read_to_string(&trace).unwrap();
        assert!(text.starts_with("step,birth_time,a,b,c,"));
        let rows = trace_rows(&text);
        assert_eq!(rows.len() as u64, times["m_cap"].as_u64().unwrap());
        for row in &rows {
            if row[11] == "1" {
                assert_eq!(
                    row[12], "0",
                    "M present but hom-connected at step {}",
                    row[0]
                );
            }
        }
        // Check the final row and a mid-run row against a from-scratch analysis.
        for row in [&rows[rows.len() / 2], rows.last().unwrap()] {
            let step = &row[0];
            let snap = dir.path().join(format!("snap{seed}_{step}.txt"));
            stdout(&[
                "gen",
                "--n",
                "10",
                "--model",
                "uniform",
                "--m",
                step,
                "--seed",
                &seed_s,
                "--out",
                snap.to_str().unwrap(),
            ]);
            let r: Value =
                serde_json::from_str(&stdout(&["analyze", snap.to_str().unwrap()])).unwrap();
            assert_eq!(r["edges"].to_string(), row[5]);
            assert_eq!(r["components"].to_string(), row[6]);
            assert_eq!(r["isolated"].to_string(), row[7]);
            assert_eq!(r["beta1"].to_string(), row[9]);
            assert_eq!(r["M_copies"].as_u64().unwrap() > 0, row[11] == "1");
            assert_eq!(r["hom_connected"] == true, row[12] == "1");
        }
    }
}

#[test]
fn process_replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let trace = dir.path().join(name);
        let json = stdout(&[
            "process",
            "--n",
            "14",
            "--seed",
            "3",
            "--trace",
            trace.to_str().unwrap(),
        ]);
        (json, fs::read(trace).unwrap())
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn experiment_via_flags_and_config_agree() {
    let dir = tempfile::tempdir().unwrap();
    let flags_dir = dir.path().join("flags");
    let config_dir = dir.path().join("config");
    stdout(&[
        "experiment",
        "--n",
        "8,10",
        "--trials",
        "4",
        "--seed",
        "5",
        "--out-dir",
        flags_dir.to_str().unwrap(),
    ]);
    let config = dir.path().join("config.json");
    let body = serde_json::json!({
        "n_list": [8, 10], "trials": 4, "master_seed": 5, "out_dir": config_dir, "workers": 1
    });
    fs::write(&config, body.to_string()).unwrap();
    stdout(&["experiment", "--config", config.to_str().unwrap()]);
    for file in ["trials.csv", "aggregate.json"] {
        assert_eq!(
            fs::read(flags_dir.join(file)).unwrap(),
            fs::read(config_dir.join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn experiment_unwritable_output_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = homconn(&[
        "experiment",
        "--n",
        "6",
        "--trials",
        "1",
        "--out-dir",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lm_compare_reports_quartiles() {
    let r: Value = serde_json::from_str(&stdout(&[
        "lm-compare",
        "--n",
        "12",
        "--trials",
        "5",
        "--seed",
        "1",
    ]))
    .unwrap();
    assert_eq!(r["trials"], 5);
    let q = &r["ratio"];
    let (lo, mid, hi) = (
        q["q25"].as_f64().unwrap(),
        q["median"].as_f64().unwrap(),
        q["q75"].as_f64().unwrap(),
    );
    assert!(lo <= mid && mid <= hi);
}
