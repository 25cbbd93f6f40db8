use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockforms")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn theta_z4_table() {
    let o = run(&["theta", "--lattice", &data("z4.json"), "--genus", "1", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let counts: Vec<u64> = v["coefficients"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 24, 24, 96]);
    assert_eq!(v["genus"], 1);
}

#[test]
fn theta_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e8.json");
    let o = run(&["theta", "--lattice", &data("e8.json"), "--lambda", "2", "--bound", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs[1]["count"], 240);
    assert_eq!(coeffs[2]["count"], 2160);
    assert!(coeffs.iter().all(|c| c["payload"].as_object().unwrap().values().all(|p| p.as_array().unwrap().is_empty())));
}

#[test]
fn dims_example() {
    let o = run(&["dims", "--lambda", "2,1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v[0]["rank"], 8);
    assert_eq!(v[0]["semistandard"], 8);
    let o = run(&["dims"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout_json(&o).as_array().unwrap().iter().all(|r| r["equal"] == true));
}

#[test]
fn single_cells_and_exit_codes() {
    let o = run(&["verify", "--identity", "recursion", "--p", "2", "--q", "2", "--ell", "1", "--j", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)[0]["pass"], true);

    let o = run(&["verify", "--identity", "recursion", "--p", "2", "--q", "2", "--ell", "1", "--j", "1", "--mutate", "sigma_pos_quarter_pi"]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v[0]["pass"], false);
    assert!(v[0]["residual_terms"].as_u64().unwrap() > 0);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("FAIL recursion") && err.contains("(2,2,1)"), "{err}");
    assert!(v[0]["residual"].as_array().unwrap().len() <= 5);

    for bad in [
        vec!["verify", "--identity", "nonsense"],
        vec!["verify", "--identity", "holomorphicity", "--p", "2", "--ell", "2", "--lambda", "1,1"],
        vec!["verify", "--grid", "huge"],
        vec!["verify", "--mutate", "nope"],
        vec!["theta", "--lattice", "/nonexistent.json", "--bound", "1"],
        vec!["theta", "--lattice", &data("z4.json"), "--bound", "1", "--lambda", "x"],
        vec!["theta", "--lattice", &data("z4.json"), "--bound", "1", "--jobs", "0"],
        vec!["dims", "--n", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn verify_out_writes_one_report_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--identity", "closedness", "--p", "2", "--q", "1", "--ell", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary = stdout_json(&o);
    assert_eq!(summary["cells"], 1);
    assert_eq!(summary["passed"], 1);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].to_string_lossy();
    assert_eq!(name, "000-closedness-p2-q1-n1-l2.json");
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(&*name)).unwrap()).unwrap();
    assert_eq!(report["identity"], "closedness");
    assert_eq!(report["pass"], true);
}

#[test]
fn grid_is_deterministic_across_job_counts() {
    let one = run(&["verify", "--jobs", "1"]);
    let four = run(&["verify", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
    let cells = stdout_json(&one);
    assert!(cells.as_array().unwrap().len() >= 60);

    let args = ["theta", "--lattice", &data("z4.json"), "--genus", "2", "--lambda", "1,1", "--bound", "3"];
    let a = run(&[&args[..], &["--jobs", "1"]].concat());
    let b = run(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fail_fast_stops_at_first_failure() {
    let full = run(&["verify", "--mutate", "recursion_quarter_pi"]);
    assert_eq!(full.status.code(), Some(1));
    let all = stdout_json(&full);
    let first = all.as_array().unwrap().iter().position(|r| r["pass"] == false).unwrap();
    for jobs in ["1", "4"] {
        let o = run(&["verify", "--mutate", "recursion_quarter_pi", "--fail-fast", "--jobs", jobs]);
        assert_eq!(o.status.code(), Some(1));
        let v = stdout_json(&o);
        assert_eq!(v.as_array().unwrap().len(), first + 1);
        assert_eq!(v[first], all[first]);
    }
}

#[test]
fn intertwine_check_passes() {
    let o = run(&["intertwine-check"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v.as_array().unwrap().iter().all(|r| r["identity"] == "intertwiner" && r["pass"] == true));
}
