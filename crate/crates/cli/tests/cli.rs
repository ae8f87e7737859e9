use std::path::PathBuf;
use std::process::{Command, Output};

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exppairs"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let Output { status, stdout, .. } = exe().args(args).output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap())
}

#[test]
fn xi_prints_machine_line() {
    let (code, out) = run(&["xi", "--a", "1", "--b", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("value=111/790 word=H05"), "{out}");
}

#[test]
fn mu_three_fifths() {
    let (code, out) = run(&["mu", "--sigma", "3/5"]);
    assert_eq!(code, 0);
    assert!(out.contains("value=1409/12170"), "{out}");
}

#[test]
fn optimize_config_files() {
    let c = config("max_11k.json");
    let (code, out) = run(&["optimize", "--config", c.to_str().unwrap(), "--stats"]);
    assert_eq!(code, 0);
    assert!(out.contains("value=176/1025 word=H05 attained=true"), "{out}");

    let c = config("mu_3_5.json");
    let (code, out) = run(&["optimize", "--config", c.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("value=1409/12170"), "{out}");

    let (code, out) = run(&["optimize", "--config", c.to_str().unwrap(), "--mode", "greedy"]);
    assert_eq!(code, 0);
    assert!(out.contains("greedy"), "{out}");
}

#[test]
fn infeasible_exits_one() {
    let c = config("infeasible.json");
    let (code, out) = run(&["optimize", "--config", c.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("infeasible"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["xi", "--a", "3", "--b", "2"]).0, 2);
    assert_eq!(run(&["mu", "--sigma", "abc"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["optimize", "--config", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["thm", "--name", "thm4", "--r", "3"]).0, 2);
    assert_eq!(run(&["eval", "A (BA H05"]).0, 2);
}

#[test]
fn theorem_four_reports_checks() {
    let (code, out) = run(&["thm", "--name", "thm4", "--r", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("alpha = 11/410"));
    assert!(out.contains("alpha < 1/(2^r + r): true"));
}

#[test]
fn generations_plot() {
    let dir = std::env::temp_dir().join(format!("exppairs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gen.svg");
    let (code, out) = run(&["generations", "--initial", "1/6,2/3", "--depth", "6", "--plot", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("126 points"), "{out}");
    let first = std::fs::read(&path).unwrap();
    run(&["generations", "--initial", "1/6,2/3", "--depth", "6", "--plot", path.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, out) = run(&["generations", "--initial", "I", "--depth", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn table_xi_reproduces_exact_rows() {
    let (code, out) = run(&["table", "xi", "--jobs", "4"]);
    assert_eq!(code, 0);
    for v in ["269/1217", "1486/8647", "111/790", "669/6305", "150509/2096993", "269/2434", "1819/19369", "63916/774807", "1819/24903"] {
        assert!(out.contains(&format!("value={v} ")), "{v} missing");
    }
    assert_eq!(out.matches("attained=false").count(), 6);
}
