//! Runs the `spg` binary on the fixture files.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn spg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spg")).args(args).output().unwrap()
}

fn spg_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_example2() {
    let out = spg(&["solve", &fixture("example2.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("A=10 B=2 path=s,a,c,d,t"));
    assert!(text.contains("algorithm=dag"), "{text}");
    assert!(text.contains("node_count="), "{text}");
}

#[test]
fn every_algorithm_agrees_on_example1() {
    for alg in ["auto", "directed-cactus", "engine", "engine-dfs"] {
        let out = spg(&["solve", &fixture("example1.json"), "--algorithm", alg]);
        assert!(out.status.success(), "{alg}");
        assert_eq!(stdout(&out).lines().next(), Some("A=12 B=2 path=s,v,x,y,v,t"), "{alg}");
    }
}

#[test]
fn spgd_answers_no_below_the_value() {
    let out = spg(&["spgd", &fixture("example2.json"), "--ca", "9", "--cb", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "no\n");
    let out = spg(&["spgd", &fixture("example2.json"), "--ca", "10", "--cb", "2"]);
    assert_eq!(stdout(&out), "yes\n");
}

#[test]
fn wrong_algorithm_exits_with_two() {
    let out = spg(&["solve", &fixture("outerplanar.json"), "--algorithm", "cactus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an undirected cactus"));
}

#[test]
fn malformed_input_exits_with_two() {
    let out = spg_with_stdin(&["solve", "-"], r#"{"directed":true,"n":2,"edges":[[0,1,1]],"s":0}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t"), "{out:?}");
    let out = spg(&["solve", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn poa_of_fixtures() {
    assert_eq!(stdout(&spg(&["poa", &fixture("example2.json")])), "poa=4/3 equilibrium=12 shortest=9\n");
    assert_eq!(stdout(&spg(&["poa", &fixture("poa.json")])), "poa=101/2 equilibrium=101 shortest=2\n");
}

#[test]
fn check_reports_classes() {
    let text = stdout(&spg(&["check", &fixture("example2.json")]));
    assert!(text.contains("classes=dag"), "{text}");
    assert!(text.contains("solver=dag"), "{text}");
    let text = stdout(&spg(&["check", &fixture("outerplanar.json")]));
    assert!(text.contains("solver=engine"), "{text}");
}

#[test]
fn generated_graphs_solve_from_stdin() {
    for kind in ["cactus", "directed-cactus", "dag"] {
        let gen = spg(&["gen", kind, "--n", "9", "--seed", "4", "--costs", "distinct"]);
        assert!(gen.status.success(), "{kind}");
        let again = spg(&["gen", kind, "--n", "9", "--seed", "4", "--costs", "distinct"]);
        assert_eq!(gen.stdout, again.stdout, "{kind} is not deterministic");
        let auto = spg_with_stdin(&["solve", "-"], &stdout(&gen));
        let engine = spg_with_stdin(&["solve", "-", "--algorithm", "engine"], &stdout(&gen));
        assert!(auto.status.success(), "{kind}");
        assert_eq!(stdout(&auto).lines().next(), stdout(&engine).lines().next(), "{kind}");
    }
}

#[test]
fn reductions_decide_their_sources() {
    let text = stdout(&spg(&["reduce", "qsat", &fixture("qsat_true.txt"), "--decide"]));
    assert_eq!(text, "qbf=true equilibrium=(0,2)\n");
    let text = stdout(&spg(&["reduce", "geography", &fixture("geography.json"), "--decide"]));
    assert!(text.starts_with("winner=A ") && text.ends_with("spgd=yes\n"), "{text}");
    let out = spg(&["reduce", "qsat", &fixture("qsat_true.txt")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap_a=0 cap_b=2"));
    let solved = spg_with_stdin(&["solve", "-"], &stdout(&out));
    assert!(stdout(&solved).starts_with("A=0 B=2 "), "{}", stdout(&solved));
}

#[test]
fn terminal_game_against_the_engine() {
    let out = spg_with_stdin(&["play", &fixture("example2.json"), "--human", "a"], "a\nd\n");
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("game over: A=10 B=2 path=s,a,c,d,t\n"), "{}", stdout(&out));
}

#[test]
fn bench_prints_a_slope() {
    let text = stdout(&spg(&["bench", "--class", "cactus", "--sizes", "200,400", "--reps", "1"]));
    assert!(text.contains("n=200 ") && text.contains("log-log slope="), "{text}");
}
