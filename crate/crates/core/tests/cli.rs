use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisolve")).args(args).env_remove("TRISOLVE_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn solve_t20_g10() {
    let o = run(&["solve", "--n", "20", "--vacancy", "g10"]);
    assert!(o.status.success());
    let sol = trisolve::Solution::parse(20, stdout(&o).trim()).unwrap();
    sol.validate().unwrap();
    assert_eq!(sol.vacancy.to_string(), "g10");
}

#[test]
fn odds_player_c() {
    let o = run(&["odds", "--n", "5", "--vacancy", "a1", "--player", "C"]);
    assert!(stdout(&o).starts_with("1 in 7"), "{}", stdout(&o));
}

#[test]
fn truncated_replay_fails_with_index() {
    let (code, v) = json(&["replay", "--n", "5", "--solution", "a3-a1, c3-a3, e5-c3"]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    assert_eq!(v["failing_move"], 4);
    let (code, v) = json(&["replay", "--n", "5", "--solution", "a3-a1, a3-a5"]);
    assert_eq!(code, 1);
    assert_eq!(v["failing_move"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--n", "5", "--vacancy", "z9"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--n"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--n", "10", "--vacancy", "d7"]).status.code(), Some(1));
    assert_eq!(run(&["shortest", "--n", "7", "--budget", "1000"]).status.code(), Some(3));
    assert_eq!(run(&["bounds", "--n", "12"]).status.code(), Some(0));
}

#[test]
fn json_is_stable() {
    for args in [
        &["feasible", "--n", "7", "--pairs"][..],
        &["classify", "--n", "6", "--vacancy", "b3"],
        &["solve", "--n", "11", "--vacancy", "a1", "--finish", "d7"],
        &["sax", "--position", "a2 a3 b2 b3 c3 a4 b4 c4 d4 a5 b5 c5 d5 e5"],
        &["count", "--n", "5", "--vacancy", "a1", "--finish", "a1", "--classes"],
    ] {
        let a = json(args);
        let b = json(args);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.0, 0, "{args:?}");
    }
    let (_, v) = json(&["feasible", "--n", "12", "--pairs"]);
    assert_eq!(v["count"], 356);
    let (_, v) = json(&["count", "--n", "5", "--vacancy", "a1", "--finish", "a1", "--classes"]);
    assert_eq!(v["count"], "6816");
    assert_eq!(v["classes"], 2);
}

#[test]
fn sax_lists_forced_jumps() {
    let (_, v) = json(&["sax", "--position", ". oo ooo oooo ooooo"]);
    assert_eq!(v["sax"]["total"], 1);
    let jumps: Vec<&str> = v["legal_jumps"].as_array().unwrap().iter().map(|j| j["jump"].as_str().unwrap()).collect();
    assert_eq!(jumps.len(), 2);
    assert!(jumps.contains(&"a3-a1") && jumps.contains(&"c3-a1"));
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("trisolve-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cache.txt");
    let o = run(&["gen-cache", "--out", path.to_str().unwrap(), "--max-n", "9"]);
    assert!(o.status.success());
    let lib = trisolve::library::Library::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(lib.len(), 149 + 125);
    let o = Command::new(env!("CARGO_BIN_EXE_trisolve"))
        .args(["solve", "--n", "9", "--vacancy", "a1", "--finish", "a1"])
        .env("TRISOLVE_CACHE", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    let _ = std::fs::remove_dir_all(&dir);
}
