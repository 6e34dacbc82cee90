use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatpoints"))
        .args(args)
        .current_dir(dir)
        .env_remove("FATPOINTS_CACHE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn alphas(v: &Value) -> Vec<u64> {
    v["alphas"].as_array().unwrap().iter().map(|a| a.as_u64().unwrap()).collect()
}

#[test]
fn alphaseq_on_a_conic() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["alphaseq", "--family", "on_conic", "--r", "6", "--kmax", "5"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["schema"], "fatpoints/1");
    assert_eq!(alphas(&v), vec![2, 4, 6, 8, 10]);
    assert_eq!(v["certification"], "EXACT_RATIONAL");
}

#[test]
fn alpha_from_a_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = run_in(dir.path(), &["generate", "--family", "general", "--r", "3", "--seed", "1", "--out", "pts.json"]);
    assert_eq!(code(&g), 0);
    let o = run_in(dir.path(), &["alpha", "--points", "pts.json", "--mults", "2,2,2"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["alpha"], 3);
    assert_eq!(v["exact"], true);
    assert_eq!(v["certified_for_general"], true);
}

#[test]
fn dim_of_six_double_points_in_degree_four() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(
        dir.path(),
        &["dim", "--d", "4", "--family", "general", "--r", "6", "--mults", "2,2,2,2,2,2", "--seed", "42"],
    );
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!((v["actual_dim"].as_u64(), v["expected_dim"].as_i64()), (Some(0), Some(-3)));
}

#[test]
fn modular_only_results_exit_with_the_gap_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["dim", "--d", "2", "--family", "type9", "--strategy", "prime"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["certification"], "SINGLE_PRIME");
}

#[test]
fn kernel_returns_the_conic() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["kernel", "--d", "2", "--family", "on_conic", "--r", "5"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["actual_dim"], 1);
    assert_eq!(v["kernel_basis"][0]["text"], "x*z - y^2");
}

#[test]
fn repro_exit_codes_and_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["repro", "ex-type9"]);
    assert_eq!(code(&o), 0);
    let table = String::from_utf8(o.stdout).unwrap();
    let row = table.lines().find(|l| l.starts_with("ex-type9")).unwrap();
    assert!(row.contains("PASS") && row.contains("3,5,7,9,12"), "{row}");
    let artifact: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("repro-ex-type9.json")).unwrap()).unwrap();
    assert_eq!(artifact["pass"], true);

    // the dual Hesse entry keeps a published value the points do not attain
    let o = run_in(dir.path(), &["repro", "ex-dualhesse13", "--out", "hesse.json"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stdout).unwrap().contains("k=3 expected 10 got 9"));

    let o = run_in(dir.path(), &["repro", "ex-missing"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("unknown example id"));
}

#[test]
fn search_writes_candidates_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "--conjecture", "2", "--trials", "20", "--seed", "1"];
    let o = run_in(dir.path(), &args);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["inconsistent"], 0);
    assert_eq!(v["controls"][0], serde_json::json!(["on_conic(8)", "CONSISTENT"]));
    let path = dir.path().join("search-conjecture2-seed1.json");
    let first = fs::read(&path).unwrap();
    assert_eq!(code(&run_in(dir.path(), &args)), 0);
    assert_eq!(first, fs::read(&path).unwrap());

    assert_eq!(code(&run_in(dir.path(), &["search", "--conjecture", "2", "--trials", "0"])), 1);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run_in(dir.path(), &["alphaseq", "--kmax", "3"])), 1);
    assert_eq!(code(&run_in(dir.path(), &["alphaseq", "--family", "type9", "--kmax", "0"])), 1);
    assert_eq!(code(&run_in(dir.path(), &["dim", "--d", "2", "--family", "on_conic"])), 1);
    let o = run_in(dir.path(), &["alpha", "--family", "on_conic", "--r", "4", "--field", "prime:7"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn plots_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_in(dir.path(), &["plot", "--family", "type9"]);
    let b = run_in(dir.path(), &["plot", "--family", "type9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert_eq!((svg.matches("<circle").count(), svg.matches("<line ").count()), (6, 3));

    let o = run_in(dir.path(), &["plot", "--family", "star", "--p", "4", "--out", "star.svg"]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(dir.path().join("star.svg")).unwrap();
    assert_eq!((svg.matches("<circle").count(), svg.matches("<line ").count()), (6, 4));

    let o = run_in(dir.path(), &["plot", "--points", r#"{"field":"rational","points":[]}"#]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().trim_end().ends_with("</svg>"));
}

#[test]
fn generated_point_sets_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (family, extra) in [("star", ["--p", "5"]), ("dual_hesse", ["--field", "prime:13"]), ("general", ["--r", "7"])] {
        let mut args = vec!["generate", "--family", family, "--seed", "3"];
        args.extend(extra);
        let first = run_in(dir.path(), &args);
        assert_eq!(code(&first), 0);
        fs::write(dir.path().join("p.json"), &first.stdout).unwrap();
        let again = run_in(dir.path(), &["generate", "--points", "p.json"]);
        assert_eq!(first.stdout, again.stdout, "{family}");
    }
}

#[test]
fn cache_is_transparent_and_verifiable() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = ["alphaseq", "--family", "general", "--r", "6", "--seed", "42", "--kmax", "4"];
    let plain = run_in(dir.path(), &cmd);
    let mut cached_args = cmd.to_vec();
    cached_args.extend(["--cache", "c"]);
    let cold = run_in(dir.path(), &cached_args);
    cached_args.push("--verify-cache");
    let warm = run_in(dir.path(), &cached_args);
    assert_eq!(code(&plain), 0);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
    assert!(String::from_utf8(warm.stderr).unwrap().contains("hits recomputed and identical"));

    let env = Command::new(env!("CARGO_BIN_EXE_fatpoints"))
        .args(cmd)
        .current_dir(dir.path())
        .env("FATPOINTS_CACHE", dir.path().join("c"))
        .output()
        .unwrap();
    assert_eq!(plain.stdout, env.stdout);

    // corrupt one stored report: verification must notice
    let entry = walk(&dir.path().join("c")).into_iter().next().unwrap();
    let mut report: Value = serde_json::from_str(&fs::read_to_string(&entry).unwrap()).unwrap();
    report["actual_dim"] = (report["actual_dim"].as_u64().unwrap() + 1).into();
    fs::write(&entry, report.to_string()).unwrap();
    assert_eq!(code(&run_in(dir.path(), &cached_args)), 1);
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out.sort();
    out
}

#[test]
fn check_reports_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["check", "--family", "type9", "--kmax", "4"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["inconsistent"], 0);
    let last = v["verdicts"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((last["claim"].as_str(), last["outcome"].as_str()), (Some("steps_of_two_conic"), Some("CONSISTENT_EXCEPTION")));
}
