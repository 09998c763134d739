//! End-to-end tests of the `scss` binary: exit codes, output formats, and
//! the pipelines between subcommands.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn scss(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scss"))
        .args(args)
        .current_dir(dir)
        .env_remove("SCSS_TIME_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const GEN_SMALL: &[&str] = &[
    "gen", "random", "--n", "6", "--m", "12", "--seed", "3", "--k1", "2", "--strongly-connected",
];

#[test]
fn generation_is_deterministic_and_solvable() {
    let tmp = TempDir::new().unwrap();
    let a = scss(GEN_SMALL, tmp.path());
    let b = scss(GEN_SMALL, tmp.path());
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("scss 6 12 2 1\n"));
}

#[test]
fn solve_agrees_with_oracle_and_verify_accepts() {
    let tmp = TempDir::new().unwrap();
    let gen = scss(&[GEN_SMALL, &["-o", "inst.scss"]].concat(), tmp.path());
    assert_eq!(code(&gen), 0);

    let solved = scss(&["solve", "inst.scss"], tmp.path());
    assert_eq!(code(&solved), 0);
    let cost_line = stdout(&solved).lines().next().unwrap().to_string();
    let cost: u64 = cost_line.strip_prefix("cost ").unwrap().parse().unwrap();

    let oracle = scss(&["oracle", "inst.scss"], tmp.path());
    assert_eq!(code(&oracle), 0);
    assert_eq!(stdout(&oracle).trim(), format!("opt {cost}"));

    write(tmp.path(), "sol.txt", &stdout(&solved));
    let verified = scss(&["verify", "inst.scss", "sol.txt"], tmp.path());
    assert_eq!(code(&verified), 0);
    assert_eq!(stdout(&verified).trim(), format!("ok {cost}"));

    let structure = scss(&["check-structure", "inst.scss", "sol.txt"], tmp.path());
    assert!(stdout(&structure).contains("structure:"));
}

#[test]
fn json_solutions_are_accepted_by_verify() {
    let tmp = TempDir::new().unwrap();
    scss(&[GEN_SMALL, &["-o", "inst.scss"]].concat(), tmp.path());
    let solved = scss(&["solve", "inst.scss", "--json"], tmp.path());
    assert_eq!(code(&solved), 0);
    assert!(stdout(&solved).trim_start().starts_with('{'));
    write(tmp.path(), "sol.json", &stdout(&solved));
    let verified = scss(&["verify", "inst.scss", "sol.json"], tmp.path());
    assert_eq!(code(&verified), 0);
}

#[test]
fn tampered_solutions_fail_verification_with_code_five() {
    let tmp = TempDir::new().unwrap();
    scss(&[GEN_SMALL, &["-o", "inst.scss"]].concat(), tmp.path());
    let solved = scss(&["solve", "inst.scss"], tmp.path());
    let mut lines: Vec<String> = stdout(&solved).lines().map(str::to_string).collect();
    let cost: u64 = lines[0].strip_prefix("cost ").unwrap().parse().unwrap();
    lines[0] = format!("cost {}", cost + 1);
    write(tmp.path(), "bad.txt", &(lines.join("\n") + "\n"));
    let verified = scss(&["verify", "inst.scss", "bad.txt"], tmp.path());
    assert_eq!(code(&verified), 5);
    assert!(stderr(&verified).contains("price"));
}

#[test]
fn two_backward_demands_are_oracle_only() {
    let tmp = TempDir::new().unwrap();
    let gen = scss(&["gen", "counterexample", "-o", "cx.scss"], tmp.path());
    assert_eq!(code(&gen), 0);

    let solved = scss(&["solve", "cx.scss"], tmp.path());
    assert_eq!(code(&solved), 2);
    assert!(stderr(&solved).contains("one backward demand"));

    let oracle = scss(&["oracle", "cx.scss"], tmp.path());
    assert_eq!(code(&oracle), 0);
    assert_eq!(stdout(&oracle).trim(), "opt 22");
}

#[test]
fn infeasible_instances_exit_three() {
    let tmp = TempDir::new().unwrap();
    write(tmp.path(), "inf.scss", "scss 2 1 1 1\ns 0\nt 1\ne 0 1 5\n");
    assert_eq!(code(&scss(&["solve", "inf.scss"], tmp.path())), 3);
    assert_eq!(code(&scss(&["oracle", "inf.scss"], tmp.path())), 3);
}

#[test]
fn exhausted_budgets_exit_four() {
    let tmp = TempDir::new().unwrap();
    scss(&["gen", "gridtiling", "--k", "2", "--n", "2", "-o", "hard.scss"], tmp.path());
    let solved = Command::new(env!("CARGO_BIN_EXE_scss"))
        .args(["solve", "hard.scss"])
        .current_dir(tmp.path())
        .env("SCSS_TIME_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(solved.status.code(), Some(4));

    write(tmp.path(), "wide.scss", "scss 4 5 1 1\ns 0\nt 1\ne 0 2 1\ne 0 3 1\ne 2 1 1\ne 3 1 1\ne 1 0 1\n");
    let capped = scss(&["oracle", "wide.scss", "--max-paths", "0"], tmp.path());
    assert_eq!(code(&capped), 4);
    assert!(stderr(&capped).contains("--max-paths"));
}

#[test]
fn parse_errors_name_the_line_and_exit_two() {
    let tmp = TempDir::new().unwrap();
    write(tmp.path(), "broken.scss", "scss 3 1 1 1\ns 0\nt 1\ne 0 9 5\n");
    let solved = scss(&["solve", "broken.scss"], tmp.path());
    assert_eq!(code(&solved), 2);
    assert!(stderr(&solved).contains("line 4"), "got: {}", stderr(&solved));
}

#[test]
fn usage_errors_exit_two() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&scss(&["solve"], tmp.path())), 2);
    assert_eq!(code(&scss(&["frobnicate"], tmp.path())), 2);
}

#[test]
fn missing_files_exit_one() {
    let tmp = TempDir::new().unwrap();
    let run = scss(&["solve", "nope.scss"], tmp.path());
    assert_eq!(code(&run), 1);
    assert!(stderr(&run).contains("nope.scss"));
}

#[test]
fn transforms_preserve_the_optimum() {
    let tmp = TempDir::new().unwrap();
    scss(
        &["gen", "random", "--n", "5", "--m", "8", "--seed", "9", "--strongly-connected", "-o", "small.scss"],
        tmp.path(),
    );
    let before = scss(&["oracle", "small.scss"], tmp.path());

    let vw = scss(&["transform", "ew2vw", "small.scss", "-o", "small.vw"], tmp.path());
    assert_eq!(code(&vw), 0);
    let ew = scss(&["transform", "vw2ew", "small.vw", "-o", "round.scss"], tmp.path());
    assert_eq!(code(&ew), 0);

    let after = scss(&["oracle", "round.scss"], tmp.path());
    assert_eq!(stdout(&before), stdout(&after));
}

#[test]
fn transform_reads_standard_input() {
    let tmp = TempDir::new().unwrap();
    let gen = scss(GEN_SMALL, tmp.path());
    let mut child = Command::new(env!("CARGO_BIN_EXE_scss"))
        .args(["transform", "ew2vw", "-"])
        .current_dir(tmp.path())
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write as _;
    child.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("vwscss"));
}

#[test]
fn gridtiling_generation_writes_a_certificate_sidecar() {
    let tmp = TempDir::new().unwrap();
    let gen = scss(&["gen", "gridtiling", "--k", "2", "--n", "2", "-o", "hard.scss"], tmp.path());
    assert_eq!(code(&gen), 0);
    let instance = std::fs::read_to_string(tmp.path().join("hard.scss")).unwrap();
    assert!(instance.starts_with("scss 80 135 3 1\n"));

    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("hard.scss.cert.json")).unwrap())
            .unwrap();
    assert_eq!(cert["params"]["beta"], 1_186_189);
    assert_eq!(cert["tiling_solution"], serde_json::json!([1, 2]));
}

#[test]
fn gridtiling_accepts_a_clique_file() {
    let tmp = TempDir::new().unwrap();
    write(tmp.path(), "triangle.graph", "graph 3 3\ne 0 1\ne 1 2\ne 0 2\n");
    let gen = scss(
        &["gen", "gridtiling", "--k", "3", "--from-clique", "triangle.graph", "-o", "tri.scss"],
        tmp.path(),
    );
    assert_eq!(code(&gen), 0, "stderr: {}", stderr(&gen));
    let instance = std::fs::read_to_string(tmp.path().join("tri.scss")).unwrap();
    assert!(instance.contains(" 5 1\n"), "demands should be (2k-1, 1)");

    write(tmp.path(), "bad.graph", "graph 3 1\ne 0 5\n");
    let bad = scss(
        &["gen", "gridtiling", "--k", "3", "--from-clique", "bad.graph"],
        tmp.path(),
    );
    assert_eq!(code(&bad), 2);
}

#[test]
fn export_dot_colors_solution_walks() {
    let tmp = TempDir::new().unwrap();
    scss(&[GEN_SMALL, &["-o", "inst.scss"]].concat(), tmp.path());
    let solved = scss(&["solve", "inst.scss"], tmp.path());
    write(tmp.path(), "sol.txt", &stdout(&solved));
    let dot = scss(&["export-dot", "inst.scss", "sol.txt"], tmp.path());
    assert_eq!(code(&dot), 0);
    let text = stdout(&dot);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("color"));
}
