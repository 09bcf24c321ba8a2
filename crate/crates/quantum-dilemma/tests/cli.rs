//! End-to-end tests of the command-line binary: output content, exit
//! codes and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quantum-dilemma"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!(
        "quantum-dilemma-test-{}-{name}",
        std::process::id()
    ))
}

#[test]
fn analyze_reports_reference_indicators() {
    let out = run(&["analyze", "70", "100", "90", "80", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rounded"]["delta_lower"], 0.5);
    assert_eq!(v["rounded"]["delta_star"], 0.667);
    assert_eq!(v["rounded"]["gamma2"], 0.615);
    assert_eq!(v["rounded"]["gamma1"], 0.615);
    assert_eq!(v["rounded"]["gamma_star"], 0.685);
    assert_eq!(v["rounded"]["n_value"], 19.38);
}

#[test]
fn analyze_evaluates_the_gap_near_its_root() {
    let out = run(&[
        "analyze", "70", "100", "90", "80", "--gamma", "0.6847", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gap = v["gap_at_gamma"]["value"].as_f64().unwrap();
    assert!(
        gap.abs() < 0.01,
        "gap at the root should be near zero, got {gap}"
    );
}

#[test]
fn analyze_rejects_invalid_matrices_with_exit_2() {
    let out = run(&["analyze", "1", "2", "3", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("b > c violated"), "{}", stderr(&out));
}

#[test]
fn analyze_rejects_bad_gamma_with_exit_2() {
    let out = run(&["analyze", "70", "100", "90", "80", "--gamma", "3.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gamma"));
}

#[test]
fn table_check_passes_on_builtin_data() {
    let out = run(&["table", "--dataset", "builtin", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(
        stderr(&out).contains("54 cells within tolerance"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn table_csv_contains_reference_rounded_cells() {
    let out = run(&["table", "--format", "csv", "--grid", "61x31"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let b2 = text.lines().find(|l| l.starts_with("blonski-2,")).unwrap();
    assert!(b2.contains("-48.45"), "{b2}");
    let d3 = text.lines().find(|l| l.starts_with("dalbo-3,")).unwrap();
    assert!(d3.contains("0.487"), "{d3}");
}

#[test]
fn table_reads_custom_datasets() {
    let path = temp_path("single.csv");
    std::fs::write(
        &path,
        "game_id,experiment,a,b,c,d,cp,observed_rank,delta\n\
         solo,custom,70,100,90,80,50,1,0.75\n",
    )
    .unwrap();
    let out = run(&[
        "table",
        "--dataset",
        path.to_str().unwrap(),
        "--format",
        "csv",
        "--grid",
        "61x31",
    ]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2, "header plus one game: {text}");
    assert!(text.lines().nth(1).unwrap().starts_with("solo,custom,"));
}

#[test]
fn table_reports_parse_errors_with_line_numbers_and_exit_4() {
    let path = temp_path("broken.csv");
    std::fs::write(
        &path,
        "game_id,experiment,a,b,c,d,cp,observed_rank,delta\n\
         ok,custom,70,100,90,80,50,1,0.75\n\
         bad,custom,1,2,3,4,50,2,0.75\n",
    )
    .unwrap();
    let out = run(&["table", "--dataset", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(4));
    let err = stderr(&out);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("b > c violated"), "{err}");
}

#[test]
fn table_missing_file_exits_4() {
    let out = run(&["table", "--dataset", "/nonexistent/games.csv"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn check_rejects_custom_datasets() {
    let out = run(&["table", "--dataset", "somefile.csv", "--check"]);
    // refused before the file is even opened
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("builtin"));
}

#[test]
fn sweep_reproduces_shared_parameter_rows() {
    let out = run(&[
        "sweep", "--param", "c", "--from", "32", "--to", "48", "--step", "8",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "c,delta_star,gamma_star,n_value");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "32");
    let delta_star: f64 = row[1].parse().unwrap();
    let gamma_star: f64 = row[2].parse().unwrap();
    assert!((delta_star - 0.816).abs() < 1e-3);
    assert!((gamma_star - 0.798).abs() < 1e-3);
}

#[test]
fn sweep_flags_skipped_points_inline() {
    let out = run(&[
        "sweep", "--param", "c", "--from", "28", "--to", "34", "--step", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# skipped c=28: "), "{text}");
    assert!(text.contains("2c > a + b violated"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("32,")), "{text}");
}

#[test]
fn sweep_with_no_valid_points_exits_2() {
    let out = run(&[
        "sweep", "--param", "c", "--from", "10", "--to", "20", "--step", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scatter_on_empty_dataset_exits_2_with_no_games() {
    let path = temp_path("empty.csv");
    std::fs::write(&path, "game_id,experiment,a,b,c,d,cp,observed_rank,delta\n").unwrap();
    let out = run(&["scatter", "--dataset", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no games"), "{}", stderr(&out));
}

#[test]
fn scatter_reports_zero_inversions() {
    let out = run(&["scatter"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "experiment,game_id,n_value,cp"
    );
    assert!(
        text.trim_end().ends_with("# inversions: blonski=0 dalbo=0"),
        "{text}"
    );
}

#[test]
fn payoff_evaluates_the_protocol_once() {
    let half_pi = "1.5707963267948966";
    let out = run(&[
        "payoff",
        "70",
        "100",
        "90",
        "80",
        "--theta-a",
        "0",
        "--phi-a",
        half_pi,
        "--theta-b",
        "0",
        "--phi-b",
        half_pi,
        "--gamma",
        half_pi,
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["distribution"]["p_cc"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["payoff_a"].as_f64().unwrap() - 90.0).abs() < 1e-10);
    // amplitude convention: the CC amplitude is -1 at this profile
    assert!((v["amplitudes"][0][0].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn equilibria_scan_marks_dd_nash_at_zero_entanglement() {
    let out = run(&[
        "equilibria",
        "70",
        "100",
        "90",
        "80",
        "--gamma",
        "0",
        "--grid",
        "61x31",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let dd = text.lines().find(|l| l.contains("(D,D)")).unwrap();
    assert!(dd.trim_end().ends_with("nash"), "{dd}");
    let cc = text.lines().find(|l| l.contains("(C,C)")).unwrap();
    assert!(!cc.trim_end().ends_with("nash"), "{cc}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["table", "--format", "csv", "--grid", "61x31"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let path = temp_path("sweep.csv");
    let out = run(&[
        "sweep",
        "--param",
        "c",
        "--from",
        "32",
        "--to",
        "48",
        "--step",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.starts_with("c,delta_star,gamma_star,n_value"));
}

#[test]
fn degrees_flag_relabels_text_output() {
    let out = run(&[
        "analyze",
        "70",
        "100",
        "90",
        "80",
        "--degrees",
        "--grid",
        "61x31",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[deg]"), "{text}");
    // gamma_star 0.685 rad is about 39.2 degrees
    assert!(text.contains("39.2"), "{text}");
}

#[test]
fn bad_grid_flag_exits_2() {
    let out = run(&["analyze", "70", "100", "90", "80", "--grid", "oxo"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze", "70", "100", "90", "80", "--grid", "1x5"]);
    assert_eq!(out.status.code(), Some(2));
}
