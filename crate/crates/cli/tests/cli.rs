use p5oct_cli::SolveReport;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const C5: &str = "p oct 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const C4: &str = "p oct 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
const P5: &str = "p oct 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n";

fn p5oct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p5oct")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn solve_json(dir: &TempDir, name: &str, text: &str, extra: &[&str]) -> (PathBuf, SolveReport, String) {
    let path = write(dir.path(), name, text);
    let mut args = vec!["solve", "--json"];
    args.extend(extra);
    args.push(s(&path));
    let out = p5oct(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let json = stdout(&out);
    (path, serde_json::from_str(&json).unwrap(), json)
}

#[test]
fn solve_reports_match_the_examples() {
    let dir = TempDir::new().unwrap();
    let (_, r, json) = solve_json(&dir, "c5.oct", C5, &[]);
    assert_eq!(r.weight, "4/1");
    assert_eq!(r.deleted.len(), 1);
    assert_eq!(r.flags, vec!["p5free-certified"]);
    assert!(json.contains("\"schema\": 1"));
    assert!(!json.contains("wall_time_ms"));

    let (_, r, _) = solve_json(&dir, "c4.oct", C4, &[]);
    assert_eq!(r.weight, "4/1");
    assert!(r.deleted.is_empty());

    let (_, r, json) = solve_json(&dir, "c4t.oct", C4, &["--timing"]);
    assert!(r.stats.wall_time_ms.is_some() && json.contains("wall_time_ms"));
}

#[test]
fn human_output_summarizes() {
    let dir = TempDir::new().unwrap();
    let out = p5oct(&["solve", s(&write(dir.path(), "c5.oct", C5))]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("weight 4/1\n"), "{text}");
    assert!(text.contains("kept 4 of 5 vertices"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let p5 = write(dir.path(), "p5.oct", P5);
    let out = p5oct(&["solve", s(&p5)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("induced P5: 1 2 3 4 5"), "{}", stderr(&out));

    let out = p5oct(&["solve", "--unchecked", "--json", s(&p5)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("unverified-class"));

    let bad = write(dir.path(), "bad.oct", "e 1 2\np oct 2 1\n");
    let out = p5oct(&["solve", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));

    let c5 = write(dir.path(), "c5.oct", C5);
    assert_eq!(p5oct(&["solve", "--cap", "2", s(&c5)]).status.code(), Some(4));

    let big = write(dir.path(), "big.oct", "p oct 21 0\n");
    assert_eq!(p5oct(&["oracle", s(&big)]).status.code(), Some(4));

    assert_eq!(p5oct(&["solve", s(&dir.path().join("missing.oct"))]).status.code(), Some(1));
}

#[test]
fn verify_accepts_solver_and_oracle_reports() {
    let dir = TempDir::new().unwrap();
    let gen = p5oct(&["gen", "--n", "13", "--seed", "8", "--weighted"]);
    let inst = write(dir.path(), "g.oct", &stdout(&gen));
    for cmd in ["solve", "oracle"] {
        let out = p5oct(&[cmd, "--json", s(&inst)]);
        assert!(out.status.success());
        let rep = write(dir.path(), &format!("{cmd}.json"), &stdout(&out));
        let v = p5oct(&["verify", s(&inst), s(&rep)]);
        assert!(v.status.success(), "{}", stderr(&v));
        assert_eq!(stdout(&v), "pass\n");
    }
}

#[test]
fn verify_names_the_violated_condition() {
    let dir = TempDir::new().unwrap();
    let (inst, report, _) = solve_json(&dir, "c5.oct", C5, &[]);

    // the deleted vertex's two neighbors end a kept 4-path, so one is on the left
    let mut tampered = report.clone();
    let extra = tampered.deleted.pop().unwrap();
    tampered.left.push(extra);
    tampered.left.sort();
    tampered.vertices.push(extra);
    tampered.vertices.sort();
    let rep = write(dir.path(), "bad-left.json", &serde_json::to_string(&tampered).unwrap());
    let out = p5oct(&["verify", s(&inst), s(&rep)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("left set not independent"), "{}", stderr(&out));

    let mut tampered = report;
    tampered.weight = "5/1".into();
    let rep = write(dir.path(), "bad-weight.json", &serde_json::to_string(&tampered).unwrap());
    let out = p5oct(&["verify", s(&inst), s(&rep)]);
    assert!(stderr(&out).contains("weight mismatch"), "{}", stderr(&out));

    let junk = write(dir.path(), "junk.json", "{");
    assert_eq!(p5oct(&["verify", s(&inst), s(&junk)]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_certified() {
    let out = p5oct(&["gen", "--n", "1"]);
    assert_eq!(stdout(&out), "p oct 1 0\n");
    assert!(stderr(&out).contains("P5-free: yes"));

    let a = p5oct(&["gen", "--n", "15", "--seed", "3", "--model", "rejection", "--density", "0.1"]);
    let b = p5oct(&["gen", "--n", "15", "--seed", "3", "--model", "rejection", "--density", "1/10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sub.oct");
    let out = p5oct(&["gen", "--n", "12", "--model", "substitution", "--out", s(&path)]);
    assert_eq!(stdout(&out), "P5-free: yes\n");
    assert!(p5oct(&["solve", s(&path)]).status.success());

    assert!(!p5oct(&["gen", "--n", "5", "--model", "nope"]).status.success());
}

#[test]
fn selftest_runs() {
    let out = p5oct(&["selftest", "--max-n", "1", "--samples", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("passed: 2/2"));

    let out = p5oct(&["selftest", "--max-n", "4", "--samples", "6", "--seed", "5"]);
    assert!(out.status.success(), "{}", stdout(&out));

    assert_eq!(p5oct(&["selftest", "--max-n", "9", "--samples", "0"]).status.code(), Some(4));
}
