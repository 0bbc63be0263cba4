use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn wpds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_running_example_trace() {
    let f = fixture("running.eq");
    let o = wpds(&["solve", "--trace", "--deterministic", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    for row in [
        "ks0 = (inf, inf, inf)",
        "ks1 = (-2, inf, inf)",
        "ks2 = (-2, inf, -2)",
        "ks3 = (-2, -1, -2)",
        "ks4 = (-3, -1, -2)",
        "witness: X1",
    ] {
        assert!(out.contains(&format!("{row}\n")), "missing {row}:\n{out}");
    }
    assert!(!out.contains("elapsed"));
}

#[test]
fn solve_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.eq");
    std::fs::write(&f, "X1 = (5)\n").unwrap();
    let o = wpds(&["solve", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "fixed point\nX1 = 5\n");
}

#[test]
fn solve_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.eq");
    std::fs::write(&f, "X1 = (5)\nX2 = X1 . Y\n").unwrap();
    let o = wpds(&["solve", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: 2:"), "{err}");
}

#[test]
fn solve_json_round_trips_the_report() {
    let f = fixture("running.eq");
    let o = wpds(&["solve", "--format", "json", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "witness");
    assert_eq!(v["witness"], "X1");
    assert_eq!(v["evaluations"], 4);
}

#[test]
fn pre_dump_of_two_state_and_movp() {
    let f = fixture("two_state.wpds");
    let o = wpds(&["pre", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let dump = stdout(&o);
    assert!(dump.contains("trans q Y q @ -2\n"), "{dump}");
    assert!(dump.contains("trans p X q @ bot\n"), "{dump}");

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("ex6.dump");
    std::fs::write(&d, &dump).unwrap();
    for (c, want) in [("q Y Y", "-4"), ("q Y", "-2"), ("q", "0"), ("p X", "bot"), ("p", "unreachable")] {
        let o = wpds(&["movp", d.to_str().unwrap(), c]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{want}\n"), "{c}");
    }
    let o = wpds(&["movp", d.to_str().unwrap(), "q Z"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pre_without_rules_has_no_transitions() {
    let f = fixture("no_rules.wpds");
    let o = wpds(&["pre", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("trans"));
}

#[test]
fn pre_with_command_line_target() {
    let f = fixture("two_state.wpds");
    let o = wpds(&["pre", path(&f), "--target", "q Y *"]);
    assert_eq!(o.status.code(), Some(0));
    let o2 = wpds(&["pre", path(&f), "--target", "q Z"]);
    assert_eq!(o2.status.code(), Some(1));
}

#[test]
fn post_dump_formats() {
    let f = fixture("two_state.wpds");
    let text = stdout(&wpds(&["post", path(&f)]));
    assert!(text.contains("state %accept final\n"), "{text}");
    let dot = stdout(&wpds(&["post", "--format", "dot", path(&f)]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains('⊥'));
    let json: serde_json::Value = serde_json::from_str(&stdout(&wpds(&["post", "--format", "json", path(&f)]))).unwrap();
    assert_eq!(json["semiring"], "minplus-int");
}

#[test]
fn check_alloc_unsafe() {
    let f = fixture("alloc.wpds");
    let o = wpds(&["check", "alloc", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("status: unsafe\n"));
}

#[test]
fn check_corr_per_label() {
    let f = fixture("corr.wpds");
    let o = wpds(&["check", "corr", path(&f), "--label", "lock"]);
    assert_eq!(o.status.code(), Some(0));
    let o = wpds(&["check", "corr", path(&f), "--label", "io"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wpds(&["check", "corr", path(&f), "--label", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let o = wpds(&["check", "corr", "--format", "json", path(&f)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn check_balance_verdicts() {
    let o = wpds(&["check", "balance", path(&fixture("balanced.cfg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: safe\n"));
    for f in ["open_only.cfg", "close_first.cfg"] {
        let o = wpds(&["check", "balance", path(&fixture(f))]);
        assert_eq!(o.status.code(), Some(2), "{f}");
    }
}

#[test]
fn json_verdict_matches_text() {
    let f = fixture("close_first.cfg");
    let text = stdout(&wpds(&["check", "balance", path(&f)]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&wpds(&["check", "balance", "--format", "json", path(&f)]))).unwrap();
    assert!(text.contains(&format!("status: {}\n", json["status"].as_str().unwrap())));
    assert!(text.contains(&format!("weight: {}\n", json["evidence"]["weight"].as_str().unwrap())));
    assert!(text.contains(&format!("word: {}\n", json["evidence"]["word"].as_str().unwrap())));
}

#[test]
fn outputs_are_deterministic() {
    let f = fixture("two_state.wpds");
    for args in [
        vec!["post", path(&f)],
        vec!["pre", path(&f)],
        vec!["check", "alloc", path(&fixture("alloc.wpds"))],
        vec!["solve", "--trace", "--deterministic", path(&fixture("running.eq"))],
    ] {
        assert_eq!(wpds(&args).stdout, wpds(&args).stdout, "{args:?}");
    }
}

#[test]
fn dot_is_rejected_for_verdicts() {
    let o = wpds(&["check", "balance", "--format", "dot", path(&fixture("balanced.cfg"))]);
    assert_eq!(o.status.code(), Some(1));
}
