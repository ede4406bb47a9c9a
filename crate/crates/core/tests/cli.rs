use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hitree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitree"))
        .args(args)
        .env_remove("HITREE_BUDGET_TREES")
        .env_remove("HITREE_BUDGET_SECONDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--report", "json"]);
    let o = hitree(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).expect("json report");
    (o.status.code().unwrap(), v)
}

fn generate(dir: &Path, file: &str, args: &[&str]) -> String {
    let out = dir.join(file).to_string_lossy().into_owned();
    let mut all = vec!["generate"];
    all.extend(args);
    all.extend(["-o", &out]);
    let o = hitree(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    out
}

#[test]
fn generate_named_families() {
    let dir = TempDir::new().unwrap();
    for (args, n) in [
        (vec!["figure1"], 16),
        (vec!["gkd", "--k", "2", "--d", "3"], 20),
        (vec!["double-star", "--m", "6"], 14),
    ] {
        let path = generate(dir.path(), "g.g6", &args);
        let (code, v) = json(&["oracle", &path, "--count"]);
        assert_eq!(code, 0);
        assert_eq!(v["input"]["vertices"], n, "{args:?}");
    }
    assert!(dir.path().join("g.g6.cover").exists());
}

#[test]
fn generate_without_output_puts_graph_in_report() {
    let (code, v) = json(&["generate", "cycle", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["vertices"], 5);
    assert_eq!(v["status"], "ok");
}

#[test]
fn build_good_tree_on_petersen() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "petersen.g6", &["petersen"]);
    let t = dir.path().join("t.el").to_string_lossy().into_owned();
    let o = hitree(&["build", &g, "--mode", "good-tree", "-o", &t]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("G-good: true"));
    let o = hitree(&["verify", &g, &t, "--check", "good"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("G-good: true"));
}

#[test]
fn no_star_cover_is_a_negative_verdict() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "k4.g6", &["complete", "--n", "4"]);
    let o = hitree(&["build", &g, "--mode", "no-adjacent-deg2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no star cover found"));
}

#[test]
fn star_grow_with_embedded_cover() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "double_star6.el", &["double-star", "--m", "6"]);
    let (code, v) = json(&["build", &g, "--mode", "star-grow", "--cover", "embedded"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["degree-2 independent"], true);
    assert_eq!(v["result"]["tree"].as_array().unwrap().len(), 13);
}

#[test]
fn verify_rejects_a_bad_tree() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "k5.el", &["complete", "--n", "5"]);
    let t = dir.path().join("path.el");
    std::fs::write(&t, "0 1\n1 2\n2 3\n3 4\n").unwrap();
    let o = hitree(&["verify", &g, t.to_str().unwrap(), "--check", "good"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    std::fs::write(&t, "0 1\n1 2\n").unwrap();
    let o = hitree(&["verify", &g, t.to_str().unwrap(), "--check", "good"]);
    assert_eq!(o.status.code(), Some(2), "not spanning is a usage error");
}

#[test]
fn structure_on_w_tree_is_a_configuration() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "w.g6", &["w-tree", "--leaves", "3", "--a", "2", "--b", "2"]);
    let (code, v) = json(&["structure", &g, "--s", "auto+centres"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["variant"], "W");
    assert_eq!(v["result"]["verified"], true);
    let (code, v) = json(&["structure", &g, "--s", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn oracle_on_figure1() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "figure1.g6", &["figure1"]);
    let (code, v) = json(&["oracle", &g, "--all", "adjacent-deg2-pair"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "true");
    assert_eq!(v["result"]["tree count"], 32768);
    let (code, v) = json(&["oracle", &g, "--all", "deg2-independent"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "false");
    assert!(v["result"]["counterexample"].is_array());
}

#[test]
fn truncated_oracle_is_unknown() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "c5.el", &["cycle", "--n", "5"]);
    let (code, v) = json(&["oracle", &g, "--all", "adjacent-deg2-pair", "--budget-trees", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "unknown");
    assert_eq!(v["result"]["truncated"], true);
    let o = Command::new(env!("CARGO_BIN_EXE_hitree"))
        .args(["oracle", g.as_str(), "--all", "adjacent-deg2-pair"])
        .env("HITREE_BUDGET_TREES", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("trees visited: 3"));
}

#[test]
fn sampled_oracle() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "g.g6", &["gkd", "--k", "2", "--d", "3"]);
    let (code, v) = json(&["oracle", &g, "--all", "has-degrees:1,2", "--sample", "200", "--seed", "4"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["verdict"], "true (sampled)");
}

#[test]
fn usage_errors_exit_2_with_a_report() {
    for args in [
        vec!["bogus"],
        vec!["generate", "nosuch"],
        vec!["build", "/nonexistent/x.g6", "--mode", "good-tree"],
        vec!["oracle", "/nonexistent/x.g6"],
    ] {
        let o = hitree(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stdout(&o).contains("status: usage_error"), "{args:?}");
    }
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), "r.g6", &["random", "--n", "30", "--m", "60", "--seed", "9"]);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        vec!["build", g.as_str(), "--mode", "good-tree"],
        vec!["structure", g.as_str()],
        vec!["oracle", g.as_str(), "--all", "good", "--sample", "50", "--seed", "3"],
    ] {
        let (_, a) = json(&args);
        let (_, b) = json(&args);
        assert_eq!(strip(a), strip(b), "{args:?}");
    }
    let again = generate(dir.path(), "r2.g6", &["random", "--n", "30", "--m", "60", "--seed", "9"]);
    assert_eq!(std::fs::read(&g).unwrap(), std::fs::read(&again).unwrap());
}
