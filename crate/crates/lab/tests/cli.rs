use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture { dir: tempfile::tempdir().unwrap() };
        f.write("one.json", r#"{"ground": ["x"]}"#);
        f.write("two.json", r#"{"ground": ["x", "y"], "subbasis": [["x"], ["y"]]}"#);
        f.write(
            "triangle.json",
            r#"{"graph": {"nodes": ["a", "b", "c"], "edges": [
                {"label": "d", "ends": ["a", "c"]},
                {"label": "e", "ends": ["a", "b"]},
                {"label": "f", "ends": ["b", "c"]}]}}"#,
        );
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_cva-lab"))
            .current_dir(self.dir.path())
            .env_remove("CVA_LAB_SEED")
            .args(args)
            .output()
            .unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const TINY: [&str; 6] = ["--space", "one.json", "--cap", "2", "--samples", "30"];

fn args<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn check_cva_on_tiny_state_model_passes() {
    let f = Fixture::new();
    let o = f.run(&args(&["check-cva", "--model", "state"], &TINY));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = json(&o);
    assert_eq!(out["passed"], true);
    assert_eq!(out["seed"], 0x00C0_FFEE_u64);
}

#[test]
fn check_ova_reports_relative_strong_neutrality_failure() {
    let f = Fixture::new();
    let o = f.run(&args(&["check-ova", "--model", "relative", "--op", "seq", "--strong"], &TINY));
    assert_eq!(code(&o), 1);
    let laws = json(&o)["reports"][0]["laws"].as_array().unwrap().clone();
    let failing: Vec<_> = laws.iter().filter(|l| l["passed"] == false).map(|l| l["law"].clone()).collect();
    assert_eq!(failing, vec![Value::from("strong-neutrality")]);
}

#[test]
fn db_is_not_a_cva() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&args(&["check-cva", "--model", "db"], &TINY))), 2);
    assert_eq!(code(&f.run(&args(&["check-ova", "--model", "db"], &TINY))), 0);
}

#[test]
fn hoare_with_run_postcondition_holds() {
    let f = Fixture::new();
    f.write("p.json", r#"{"domain": ["x"], "traces": [[{"x": 0}], [{"x": 1}, {"x": 0}]]}"#);
    f.write("a.json", r#"{"domain": ["x"], "traces": [[{"x": 0}, {"x": 1}]]}"#);
    let o = f.run(&args(&["hoare", "--model", "state", "--p", "p.json", "--a", "a.json", "--q", "run"], &TINY));
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["holds"], true);
    let o = f.run(&["hoare", "--space", "one.json", "--cap", "3", "--p", "p.json", "--a", "a.json", "--q", "a.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn jones_and_refine() {
    let f = Fixture::new();
    f.write("a.json", r#"{"domain": ["x"], "traces": [[{"x": 0}, {"x": 1}]]}"#);
    f.write("b.json", r#"{"domain": ["x"], "traces": [[{"x": 0}, {"x": 1}], [{"x": 1}]]}"#);
    let o = f.run(&args(&["jones", "--p", "skip", "--r", "run", "--a", "a.json", "--g", "b.json", "--q", "run"], &TINY));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&f.run(&args(&["refine", "--a", "a.json", "--b", "b.json"], &TINY))), 0);
    assert_eq!(code(&f.run(&args(&["refine", "--a", "b.json", "--b", "a.json"], &TINY))), 1);
}

#[test]
fn eval_glues_and_joins() {
    let f = Fixture::new();
    f.write("a.json", r#"{"domain": ["x"], "traces": [[{"x": 0}, {"x": 1}]]}"#);
    f.write("b.json", r#"{"domain": ["x"], "traces": [[{"x": 1}, {"x": 0}], [{"x": 0}]]}"#);
    let o = f.run(&["eval", "--space", "one.json", "--cap", "3", "--expr", "a.json seq b.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["traces"], serde_json::json!([[{"x": 0}, {"x": 1}, {"x": 0}]]));
    let o = f.run(&["eval", "--space", "one.json", "--cap", "3", "--expr", "a.json par b.json"]);
    assert_eq!(json(&o)["traces"], serde_json::json!([]));
    assert_eq!(code(&f.run(&["eval", "--space", "one.json", "--expr", "a.json xor b.json"])), 2);
}

#[test]
fn infer_semijoin_matches_naive_on_triangle() {
    let f = Fixture::new();
    f.write("ra.json", r#"{"domain": ["a", "d", "e"], "rows": [
        {"a": 0, "d": 0, "e": 1}, {"a": 1, "d": 1, "e": 1}, {"a": 0, "d": 1, "e": 0}]}"#);
    f.write("rb.json", r#"{"domain": ["b", "e", "f"], "rows": [
        {"b": 0, "e": 1, "f": 0}, {"b": 1, "e": 0, "f": 1}]}"#);
    f.write("rc.json", r#"{"domain": ["c", "d", "f"], "rows": [
        {"c": 1, "d": 1, "f": 0}, {"c": 0, "d": 0, "f": 1}]}"#);
    fs::create_dir(f.path("out")).unwrap();
    let base = ["infer", "--model", "db", "--space", "triangle.json", "--kb", "ra.json,rb.json,rc.json",
        "--query", "d", "--query", "e", "--query", "f"];
    let fast = f.run(&args(&base, &["--out", "out"]));
    let slow = f.run(&args(&base, &["--naive"]));
    assert_eq!(code(&fast), 0, "{}", String::from_utf8_lossy(&fast.stderr));
    assert_eq!(json(&fast)["results"], json(&slow)["results"]);
    assert_eq!(json(&fast)["results"][0]["valuation"]["rows"], serde_json::json!([{"d": 1}]));
    assert!(Path::new(&f.path("out/query-e.json")).exists());
}

#[test]
fn infer_seq_needs_naive() {
    let f = Fixture::new();
    f.write("a.json", r#"{"domain": ["x"], "traces": [[{"x": 0}, {"x": 1}]]}"#);
    let base = ["infer", "--space", "two.json", "--kb", "a.json", "--op", "seq", "--query", "x"];
    assert_eq!(code(&f.run(&base)), 2);
    assert_eq!(code(&f.run(&args(&base, &["--naive"]))), 0);
}

#[test]
fn stutter_quotient_is_colax_not_lax() {
    let f = Fixture::new();
    let tail = ["--space", "two.json", "--cap", "3", "--samples", "60"];
    assert_eq!(code(&f.run(&args(&["check-morphism", "--mode", "colax"], &tail))), 0);
    assert_eq!(code(&f.run(&args(&["check-morphism", "--mode", "lax"], &tail))), 1);
    let id = ["check-morphism", "--kind", "identity", "--model", "action", "--mode", "strong"];
    assert_eq!(code(&f.run(&args(&id, &TINY))), 0);
}

#[test]
fn check_tuple_system_on_triangle() {
    let f = Fixture::new();
    let o = f.run(&["check-tuple-system", "--model", "db", "--space", "triangle.json", "--samples", "20"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn configuration_errors_exit_2() {
    let f = Fixture::new();
    let missing = f.run(&["check-cva", "--space", "nope.json"]);
    assert_eq!(code(&missing), 2);
    assert_eq!(code(&f.run(&["frobnicate"])), 2);
    assert_eq!(code(&f.run(&args(&["check-cva", "--model", "quantum"], &TINY))), 2);
    assert_eq!(code(&f.run(&["check-cva", "--space", "one.json", "--cap", "0"])), 2);
    f.write("bad.json", "{\n  \"ground\": [\"x\",\n}");
    let bad = f.run(&["check-cva", "--space", "bad.json"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad.json:3:"));
}

#[test]
fn invalid_valuation_names_the_trace() {
    let f = Fixture::new();
    f.write("r.json", r#"{"domain": ["x"], "traces": [[{"x": 0}], [{"x": 1}, {"x": 1}]]}"#);
    let o = f.run(&args(&["refine", "--model", "relative", "--a", "r.json", "--b", "r.json"], &TINY));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("trace 1"));
}

#[test]
fn reports_are_deterministic_and_seed_is_configurable() {
    let f = Fixture::new();
    let cmd = args(&["check-ova", "--model", "action"], &TINY);
    let (a, b) = (f.run(&cmd), f.run(&cmd));
    assert_eq!(a.stdout, b.stdout);
    let seeded = Command::new(env!("CARGO_BIN_EXE_cva-lab"))
        .current_dir(f.dir.path())
        .env("CVA_LAB_SEED", "7")
        .args(&cmd)
        .output()
        .unwrap();
    assert_eq!(json(&seeded)["seed"], 7);
    assert_eq!(json(&f.run(&args(&cmd, &["--seed", "0x10"])))["seed"], 16);
}

#[test]
fn text_format_renders_laws() {
    let f = Fixture::new();
    let o = f.run(&args(&["check-cva", "--format", "text"], &TINY));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.starts_with("PASS check-cva"), "{text}");
    assert!(text.contains("weak-exchange"));
}
