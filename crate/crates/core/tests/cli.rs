use std::path::Path;
use std::process::{Command, Output};

use agabc::harness::{summarize, format_sci, SUMMARY_HEADER, TRIALS_HEADER};

fn agabc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agabc"))
        .args(args)
        .env_remove("AGABC_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn bench_contract_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = agabc(&[
        "bench", "--function", "f2", "--algo", "agabc", "--dim", "10", "--trials", "3", "--seed", "7",
        "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let summary = read(&dir.path().join("bench_summary.csv"));
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], SUMMARY_HEADER);
    assert!(lines[1].starts_with("agabc,f2,10,3,"));

    // Recomputing the statistics from the per-trial file reproduces the
    // summary at printed precision.
    let mut trials = csv::Reader::from_path(dir.path().join("bench_trials.csv")).unwrap();
    assert_eq!(trials.headers().unwrap().iter().collect::<Vec<_>>().join(","), TRIALS_HEADER);
    let mut finals = Vec::new();
    let mut seeds = Vec::new();
    for rec in trials.records() {
        let rec = rec.unwrap();
        seeds.push(rec[4].parse::<u64>().unwrap());
        finals.push(rec[5].parse::<f64>().unwrap());
    }
    assert_eq!(seeds, [7, 8, 9]);
    let (best, avg, std) = summarize(&finals);
    let expected = format!("agabc,f2,10,3,{},{},{}", format_sci(best), format_sci(avg), format_sci(std));
    assert_eq!(lines[1], expected);

    let mut shuffled = finals.clone();
    shuffled.reverse();
    assert_eq!(summarize(&shuffled), (best, avg, std));
}

#[test]
fn unknown_algorithm_names_valid_choices() {
    let out = agabc(&["bench", "--algo", "pso"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pso") && err.contains("abc, gabc, agabc, random"), "{err}");
}

#[test]
fn unknown_function_is_a_usage_error() {
    let out = agabc(&["bench", "--function", "f9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f1, f2, f3, f4, f5, f6, f7"));
}

#[test]
fn schedule_prints_report_and_makespan() {
    let dir = tempfile::tempdir().unwrap();
    let out = agabc(&[
        "schedule", "--algo", "agabc", "--seed", "7", "--trials", "2", "--iters", "30",
        "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let makespan: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("makespan: "))
        .and_then(|l| l.trim_end_matches(" s").parse().ok())
        .expect("makespan line");
    let report: serde_json::Value = serde_json::from_str(&read(&dir.path().join("schedule_best.json"))).unwrap();
    assert_eq!(report["makespan"].as_f64(), Some(makespan));
    assert_eq!(report["sequence"].as_array().unwrap().len(), 60);
    assert_eq!(report["port_allocation"].as_array().unwrap().len(), 16);
    assert!(read(&dir.path().join("schedule_summary.csv")).starts_with(SUMMARY_HEADER));
}

#[test]
fn trace_path_requires_two_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = agabc(&["trace", "--path", "--dim", "3", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = agabc(&[
        "trace", "--path", "--algo", "locked-D", "--function", "f1", "--pop", "10", "--iters", "25",
        "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let path = read(&dir.path().join("path_locked-D_f1.csv"));
    assert_eq!(path.lines().next(), Some("iter,source,x1,x2"));
    assert_eq!(path.lines().count(), 25 * 5 + 1);
}

#[test]
fn weight_trace_has_one_row_per_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let out = agabc(&[
        "trace", "--function", "f5", "--pop", "20", "--iters", "50", "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = read(&dir.path().join("weights_f5_d10.csv"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    assert_eq!(lines[0], "iter,a1,b1,c1,d1,e1");
    assert_eq!(lines[1], "0,1,1,1,1,1");

    let out = agabc(&["trace", "--algo", "abc", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    let out_dir = dir.path().join("from_config");
    std::fs::write(
        &config,
        format!(
            "functions = [\"f1\", \"f4\"]\nalgorithms = [\"abc\"]\ndims = [3]\ntrials = 4\npop = 10\niters = 10\nout_dir = {:?}\n",
            out_dir.to_str().unwrap()
        ),
    )
    .unwrap();
    let out = agabc(&["bench", "--config", config.to_str().unwrap(), "--trials", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = read(&out_dir.join("bench_summary.csv"));
    let rows: Vec<&str> = summary.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("abc,f1,3,2,") && rows[1].starts_with("abc,f4,3,2,"));

    std::fs::write(&config, "populaton = 3\n").unwrap();
    let out = agabc(&["bench", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_defaults_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_agabc"))
        .args(["bench", "--function", "f2", "--algo", "random", "--dim", "2", "--trials", "1", "--pop", "4", "--iters", "3"])
        .env("AGABC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("bench_summary.csv").exists());
}

#[test]
fn list_shows_functions_and_algorithms() {
    let out = agabc(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["f1", "f7", "agabc", "random", "desk"] {
        assert!(text.contains(name), "{name} missing from:\n{text}");
    }
}
