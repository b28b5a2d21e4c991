use std::path::Path;
use std::process::{Command, Output};

fn kobdd(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kobdd"))
        .current_dir(dir)
        .env_remove("KOBDD_EXHAUSTIVE_LIMIT")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let o = kobdd(dir, args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn build_eval_simulate_diff() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["build", "eqs", "--k", "4", "--n", "8", "-o", "e.bp"]);
    assert_eq!(ok(d, &["eval", "-i", "e.bp", "--input", "01110000"]).trim(), "1");
    assert_eq!(ok(d, &["eval", "-i", "e.bp", "--input", "01100000"]).trim(), "0");
    ok(d, &["transform", "simulate", "-i", "e.bp", "-o", "e1.bp"]);
    assert!(ok(d, &["diff-eval", "e.bp", "e1.bp", "--exhaustive"]).starts_with("equivalent"));
    ok(d, &["validate", "-i", "e1.bp"]);
}

#[test]
fn counterexample_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["build", "eqs", "--k", "4", "--n", "8", "-o", "e.bp"]);
    let text = std::fs::read_to_string(d.join("e.bp")).unwrap();
    let (head, sinks) = text.trim_end().rsplit_once('\n').unwrap();
    assert_eq!(sinks, "sinks zero=(33,0) one=(33,1)");
    std::fs::write(d.join("c.bp"), format!("{head}\nsinks zero=(33,1) one=(33,0)\n")).unwrap();
    let o = kobdd(d, &["diff-eval", "e.bp", "c.bp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("counterexample input 00000000"));
}

#[test]
fn parity_count() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ok(
        tmp.path(),
        &["analyze", "count", "--fn", "parity", "--n", "4", "--mode", "exact"],
    );
    assert!(out.lines().last().unwrap().starts_with("N=2 "), "{out}");
    let csv = ok(
        tmp.path(),
        &["analyze", "count", "--fn", "parity", "--n", "4", "--format", "csv"],
    );
    assert_eq!(csv.lines().next(), Some("order,cut,n_pi,n_theta,bound,holds"));
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = kobdd(d, &["build", "eqs", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kobdd(d, &["build", "eqs", "--k", "3", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kobdd(d, &["eval", "-i", "missing.bp", "--input", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kobdd(d, &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn protocol_round_trip_and_matrix_check() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(
        d,
        &[
            "build", "saf", "--k", "2", "--w", "1", "--n", "17", "--strict", "-o", "s.bp",
        ],
    );
    ok(d, &["protocol", "compile", "-i", "s.bp", "--cut", "8", "-o", "s.cp"]);
    let text = std::fs::read_to_string(d.join("s.cp")).unwrap();
    assert!(text.starts_with("CPv1 mode=det t=7 "));
    let checked = ok(
        d,
        &[
            "protocol",
            "check-matrix",
            "-i",
            "s.cp",
            "--samples",
            "500",
            "--seed",
            "3",
        ],
    );
    assert_eq!(checked.trim(), "equivalent on 500 inputs");
    let x = "0".repeat(17);
    assert_eq!(ok(d, &["protocol", "run", "-i", "s.cp", "--input", &x]).trim(), "0");
    let o = kobdd(d, &["protocol", "weaken", "-i", "s.cp", "--delta", "1/4"]);
    assert_eq!(o.status.code(), Some(2), "weakening needs a probabilistic protocol");
}

#[test]
fn bound_checks() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert!(ok(d, &["check", "det", "--count", "2", "--k", "1", "--w", "2"]).contains("holds"));
    let o = kobdd(d, &["check", "det", "--count", "3", "--k", "1", "--w", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(ok(d, &["check", "nd", "--count", "64", "--k", "2", "--w", "2"]).contains("bound=64 holds"));
    assert!(ok(
        d,
        &["check", "prob", "--count", "1", "--k", "2", "--w", "2", "--delta", "1/4"]
    )
    .contains("holds"));
}

#[test]
fn sampling_fallback_prints_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["build", "eqs", "--k", "4", "--n", "12", "-o", "e.bp"]);
    let o = Command::new(env!("CARGO_BIN_EXE_kobdd"))
        .current_dir(d)
        .env("KOBDD_EXHAUSTIVE_LIMIT", "8")
        .args(["diff-eval", "e.bp", "e.bp", "--seed", "5"])
        .output()
        .unwrap();
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("warning") && err.contains("seed: 5"), "{err}");
    assert_eq!(stdout(&o).trim(), "equivalent on 10000 inputs");
}

#[test]
fn same_seed_same_output() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["build", "eqs", "--k", "4", "--n", "8", "-o", "e.bp"]);
    let args = [
        "analyze",
        "count",
        "-i",
        "e.bp",
        "--mode",
        "sampled",
        "--samples",
        "5",
        "--seed",
        "9",
    ];
    assert_eq!(ok(d, &args), ok(d, &args));
    let built = ok(d, &["build", "saf", "--k", "1", "--w", "1", "--n", "7"]);
    assert_eq!(built, ok(d, &["build", "saf", "--k", "1", "--w", "1", "--n", "7"]));
}

#[test]
fn emitted_files_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["build", "eqs", "--k", "4", "--n", "8", "-o", "e.bp"]);
    ok(d, &["transform", "decompose", "-i", "e.bp", "-o", "dec"]);
    let manifest = std::fs::read_to_string(d.join("dec/manifest.dec")).unwrap();
    assert!(manifest.starts_with("DECv1 n=8 k=4 traces=1"));
    for entry in std::fs::read_dir(d.join("dec")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "bp") {
            let p = path.to_str().unwrap();
            ok(d, &["validate", "-i", p]);
            let text = std::fs::read_to_string(&path).unwrap();
            let parsed: kobdd::BranchingProgram = text.parse().unwrap();
            assert_eq!(parsed.to_bpv1(), text);
        }
    }
}
