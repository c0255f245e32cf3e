use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mnlogic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_dn2_compact() {
    let o = run(&["gen", "dn", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(p1|p2)&(p1|p3) |- p1|(p2&p3)");
}

#[test]
fn gen_dn_rejects_small_n() {
    assert_eq!(run(&["gen", "dn", "1"]).status.code(), Some(2));
}

#[test]
fn prove_exit_codes() {
    assert_eq!(run(&["prove", "p & q |- p"]).status.code(), Some(0));
    let o = run(&["prove", "p | q |- p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("countermodel:"));
}

#[test]
fn prove_json_has_outcome() {
    let o = run(&["prove", "--logic", "nfl", "p & (q | r) |- p & q | p & r", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "refuted");
    assert_eq!(v["logic"], "nfl");
    assert!(v["countermodel"].is_object());
    assert_eq!(v["trees"].as_array().unwrap().len(), 2);
}

#[test]
fn prove_dot() {
    let o = run(&["prove", "p |- p", "--emit", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn prove_c5_unrealised_then_semantic() {
    let c5 = "(p|q)&(q|r)&(r|s)&(s|t)&(t|p) |- p&q|q&r|r&s|s&t|t&p";
    let paper = run(&["prove", "--lattice", "m2", c5]);
    assert_eq!(paper.status.code(), Some(1));
    assert!(stdout(&paper).contains("result: unrealised"));
    let sem = run(&["prove", "--lattice", "m2", "--mode", "semantic", c5]);
    assert_eq!(sem.status.code(), Some(0));
}

#[test]
fn prove_rejects_n5() {
    let o = run(&["prove", "--lattice", "n5", "p |- p"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_eq3_separates_m3_m4() {
    assert_eq!(run(&["check", "--sequent-from", "eq3", "--lattice", "m3"]).status.code(), Some(0));
    assert_eq!(run(&["check", "--sequent-from", "eq3", "--lattice", "m4"]).status.code(), Some(1));
}

#[test]
fn check_rejects_momega() {
    let o = run(&["check", "--lattice", "momega", "p |- p"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("symbolic"));
}

#[test]
fn check_parse_error() {
    assert_eq!(run(&["check", "p &"]).status.code(), Some(2));
}

#[test]
fn diff_small_run_is_thread_independent() {
    let a = run(&["diff", "--samples", "60", "--seed", "3", "--threads", "1", "--emit", "json"]);
    let b = run(&["diff", "--samples", "60", "--seed", "3", "--threads", "4", "--emit", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["semantic_agreement"], v["cases"]);
}

#[test]
fn corpus_roundtrip_through_files() {
    let dir = std::env::temp_dir().join(format!("mnlogic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["corpus", "--export", p]).status.code(), Some(0));
    let o = run(&["corpus", "--import", p, "--lattice", "m3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 failed"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lattice_info_ladder5_has_no_negation() {
    let o = run(&["lattice-info", "ladder5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("De Morgan negations: none"));
    let j = run(&["lattice-info", "m3", "--emit", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
}
