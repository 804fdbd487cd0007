//! End-to-end tests of the binary: exit codes, CSV format, strict schema.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stochord"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn repo_scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

struct CsvCurve {
    header: String,
    rows: Vec<Vec<f64>>,
}

fn read_curve(path: &Path) -> CsvCurve {
    let text = fs::read_to_string(path).expect("csv exists");
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|v| v.parse::<f64>().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    CsvCurve { header, rows }
}

fn row_nearest(curve: &CsvCurve, t: f64) -> &Vec<f64> {
    curve
        .rows
        .iter()
        .min_by(|a, b| {
            (a[0] - t)
                .abs()
                .partial_cmp(&(b[0] - t).abs())
                .unwrap()
        })
        .unwrap()
}

#[test]
fn counterexample_reproduces_signs_and_writes_a_curve() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ce31.csv");
    let out = run(&["counterexample", "CE31", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("expected > 0) ok"), "{text}");
    assert!(text.contains("expected < 0) ok"), "{text}");

    let curve = read_curve(&csv);
    assert_eq!(curve.header, "t,F_u,F_v,diff,rhr_u,rhr_v");
    assert_eq!(curve.rows.len(), 1201);
    // diff column: positive near 1.5, negative near 1.6
    assert!(row_nearest(&curve, 1.5)[3] > 0.0);
    assert!(row_nearest(&curve, 1.6)[3] < 0.0);
}

#[test]
fn counterexample_rate_case_signs_show_in_the_rhr_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ce33.csv");
    let out = run(&["counterexample", "ce33", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let curve = read_curve(&csv);
    let eta = |t: f64| {
        let r = row_nearest(&curve, t);
        r[4] - r[5]
    };
    assert!(eta(1.7) > 0.0);
    assert!(eta(1.8) < 0.0);
    assert_eq!(code(&run(&["counterexample", "CE99"])), 2);
}

#[test]
fn eval_is_deterministic_and_matches_the_reference_inequality() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let scenario = repo_scenario("ex34.json");
    for csv in [&a, &b] {
        let out = run(&["eval", scenario.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "byte-identical reruns");
    let curve = read_curve(&a);
    assert_eq!(curve.rows.len(), 2000);
    for row in &curve.rows {
        assert!(row[4] >= row[5] - 1e-10, "rhr dominance at t={}", row[0]);
    }
}

#[test]
fn verify_theorem_reports_consistency() {
    let out = run(&[
        "verify-theorem",
        repo_scenario("ex52.json").to_str().unwrap(),
        "--theorem",
        "chain-st-n2-location",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("consistent : true"), "{text}");
    assert!(text.contains("applicable : false"), "{text}");
    assert!(text.contains("holds"), "{text}");

    let out = run(&[
        "verify-theorem",
        repo_scenario("ex34.json").to_str().unwrap(),
        "--theorem",
        "location-submajor-rh",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("rh dominance implies st dominance on grid: true"));

    let out = run(&[
        "verify-theorem",
        repo_scenario("ex34.json").to_str().unwrap(),
        "--theorem",
        "no-such-id",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_conditions_gates_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lomax.json");
    let body = |checks: &str| {
        format!(
            r#"{{
  "baseline": {{ "family": "lomax-power", "c": 5.0, "k": 0.2 }},
  "portfolio_u": {{ "alpha": [1.0], "lambda": [0.5], "theta": [1.0], "p": [0.5] }},
  "portfolio_v": {{ "alpha": [1.0], "lambda": [0.5], "theta": [1.0], "p": [0.5] }},
  "grid": {{ "t_min": 0.001, "t_max": 50.0, "points": 400, "spacing": "linear" }},
  "checks": [{checks}]
}}"#
        )
    };
    fs::write(&file, body("\"C1\", \"C8\"")).unwrap();
    let out = run(&["check-conditions", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("C1: satisfied"));

    fs::write(&file, body("\"C2\"")).unwrap();
    let out = run(&["check-conditions", file.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("C2: VIOLATED"));

    fs::write(&file, body("\"C11\"")).unwrap();
    assert_eq!(code(&run(&["check-conditions", file.to_str().unwrap()])), 2);
}

#[test]
fn check_major_prints_the_table_and_gates_on_requested_checks() {
    let out = run(&["check-major", repo_scenario("ex34.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("vector classes:"));
    assert!(text.contains("preorders"));
    assert!(text.contains("check rel:weak-sub:lambda-v:lambda-u: holds"), "{text}");

    // a deliberately false relation flips the exit code
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let mut body: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(repo_scenario("ex34.json")).unwrap()).unwrap();
    body["checks"] = serde_json::json!(["rel:weak-sub:lambda-u:lambda-v"]);
    fs::write(&file, serde_json::to_string(&body).unwrap()).unwrap();
    let out = run(&["check-major", file.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAILS"));
}

#[test]
fn malformed_input_exits_two_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    fs::write(&file, "{ \"baseline\": { \"family\": \"glfr\", \"a\": 1.0,\n  BROKEN").unwrap();
    let out = run(&["eval", file.to_str().unwrap(), "--out", "/dev/null"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("input error"), "{err}");
    assert!(err.contains(":2:"), "line/column diagnostic expected: {err}");

    // unknown keys are rejected by the strict schema
    fs::write(
        &file,
        r#"{
  "baseline": { "family": "glfr", "a": 1.0, "b": 0.0, "d": 1.0 },
  "portfolio_u": { "alpha": [1.0], "lambda": [1.0], "theta": [1.0], "p": [0.5] },
  "portfolio_v": { "alpha": [1.0], "lambda": [1.0], "theta": [1.0], "p": [0.5] },
  "grid": { "t_min": 1.1, "t_max": 9.0, "points": 100, "spacing": "linear" },
  "surprise": true
}"#,
    )
    .unwrap();
    let out = run(&["eval", file.to_str().unwrap(), "--out", "/dev/null"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("surprise"));

    // invalid parameter values are input errors too
    fs::write(
        &file,
        r#"{
  "baseline": { "family": "moeql", "a": 0.1, "b": -1.5, "d": 0.8 },
  "portfolio_u": { "alpha": [1.0], "lambda": [1.0], "theta": [1.0], "p": [0.5] },
  "portfolio_v": { "alpha": [1.0], "lambda": [1.0], "theta": [1.0], "p": [0.5] },
  "grid": { "t_min": 1.1, "t_max": 9.0, "points": 100, "spacing": "linear" }
}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["eval", file.to_str().unwrap(), "--out", "/dev/null"])), 2);
}

#[test]
fn simulate_reports_ks_distances() {
    let out = run(&[
        "simulate",
        repo_scenario("ex34.json").to_str().unwrap(),
        "--samples",
        "20000",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&out), 0, "stdout: {}\nstderr: {}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("portfolio_u: KS distance"));
    assert!(text.contains("portfolio_v: KS distance"));
    assert!(text.contains("ok"));
}

#[test]
fn sweep_theorem_runs_and_honors_the_thread_cap() {
    let out = bin()
        .args(["sweep-theorem", "psi-submajor-st", "--seeds", "6"])
        .env("STOCHORD_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("6 runs, 6 applicable, 6 hold, 0 inconsistent"), "{text}");
    assert_eq!(code(&run(&["sweep-theorem", "bogus-id", "--seeds", "2"])), 2);
}

#[test]
fn eval_rejects_grids_below_the_locations_unless_extended() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("low.json");
    let body = |extended: &str| {
        format!(
            r#"{{
  "baseline": {{ "family": "glfr", "a": 1.0, "b": 0.0, "d": 1.0 }},
  "portfolio_u": {{ "alpha": [1.0], "lambda": [2.0], "theta": [1.0], "p": [0.5] }},
  "portfolio_v": {{ "alpha": [1.0], "lambda": [2.0], "theta": [1.0], "p": [0.4] }},
  "grid": {{ "t_min": 0.5, "t_max": 9.0, "points": 100, "spacing": "linear"{extended} }}
}}"#
        )
    };
    fs::write(&file, body("")).unwrap();
    let csv = dir.path().join("low.csv");
    let out = run(&["eval", file.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("extended"));

    fs::write(&file, body(", \"extended\": true")).unwrap();
    let out = run(&["eval", file.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    // below the locations the reversed-hazard columns are NaN
    let first = fs::read_to_string(&csv).unwrap();
    let second_line = first.lines().nth(1).unwrap();
    assert!(second_line.ends_with("NaN,NaN"), "{second_line}");
}

#[test]
fn builtin_fixture_ids_work_in_place_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ex52.csv");
    let out = run(&["eval", "EX52", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let curve = read_curve(&csv);
    assert_eq!(curve.rows.len(), 2000);
    for row in &curve.rows {
        assert!(row[3] <= 0.0, "diff must stay nonpositive, t={}", row[0]);
    }

    let out = run(&["verify-theorem", "EX34", "--theorem", "location-submajor-rh"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("consistent : true"));
}

#[test]
fn default_grid_rule_applies_when_the_file_omits_it() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("nogrid.json");
    fs::write(
        &file,
        r#"{
  "baseline": { "family": "glfr", "a": 1.0, "b": 0.0, "d": 1.0 },
  "portfolio_u": { "alpha": [1.0, 1.0], "lambda": [0.5, 1.0], "theta": [1.5, 2.0], "p": [0.5, 0.8] },
  "portfolio_v": { "alpha": [1.0, 1.0], "lambda": [0.5, 1.0], "theta": [1.2, 1.6], "p": [0.5, 0.8] }
}"#,
    )
    .unwrap();
    let csv = dir.path().join("c.csv");
    let out = run(&["eval", file.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let curve = read_curve(&csv);
    assert_eq!(curve.rows.len(), 2000);
    assert!(curve.rows[0][0] > 1.0, "grid starts just above the largest location");
}
