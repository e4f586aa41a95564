use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn worked_example() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/worked_example.json")
}

fn panelkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_panelkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_accepts_worked_example() {
    let o = panelkit(&["validate", path_str(&worked_example())]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("valid "));
}

#[test]
fn validate_reports_violations_with_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("dup.json");
    let text = fs::read_to_string(worked_example())
        .unwrap()
        .replace(r#""id": "p2""#, r#""id": "p1""#);
    fs::write(&bad, text).unwrap();
    let o = panelkit(&["validate", path_str(&bad), "--format", "json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_input_exits_4() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&panelkit(&["panels", path_str(&bad)])), 4);
    assert_eq!(code(&panelkit(&["panels", "/no/such/file.json"])), 4);
    assert_eq!(code(&panelkit(&["panels", "--assign", "magic", "x"])), 4);
}

#[test]
fn capacity_override_is_a_validation_failure() {
    let o = panelkit(&["run", path_str(&worked_example()), "--panel-size", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn stranded_greedy_exits_3() {
    // c1 and c2 both take p1 and p2, leaving only p3 for c3
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("tight.json");
    fs::write(
        &inst,
        r#"{
            "topics": [{"id": "t1", "label": "a"}, {"id": "t2", "label": "b"}],
            "panelists": [
                {"id": "p1", "topics": ["t1"]},
                {"id": "p2", "topics": ["t1"]},
                {"id": "p3", "topics": ["t2"]}
            ],
            "candidates": [
                {"id": "c1", "topics": ["t1"], "stage": "both"},
                {"id": "c2", "topics": ["t1"], "stage": "both"},
                {"id": "c3", "topics": ["t1"], "stage": "both"}
            ],
            "config": {"panel_size": 2, "max_load": 2}
        }"#,
    )
    .unwrap();
    let o = panelkit(&["panels", path_str(&inst), "--assign", "edge"]);
    assert_eq!(code(&o), 3);
    let o = panelkit(&["panels", path_str(&inst), "--assign", "flow"]);
    assert_eq!(code(&o), 0);
    // one fewer seat of capacity is rejected before any solver runs
    let o = panelkit(&["panels", path_str(&inst), "--max-load", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn order_flag_changes_greedy_result() {
    let ex = worked_example();
    let run = |order: &str| {
        let o = panelkit(&[
            "run",
            path_str(&ex),
            "--assign",
            "edge",
            "--order",
            order,
            "--format",
            "json",
        ]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["paneling_value"].as_f64().unwrap()
    };
    assert!((run("c1,c2") - 0.5).abs() < 1e-12);
    assert!((run("c2,c1") - 1.5).abs() < 1e-12);
    let o = panelkit(&[
        "panels",
        path_str(&ex),
        "--assign",
        "edge",
        "--order",
        "c1,c9",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn panels_csv_for_max_flow() {
    let o = panelkit(&["panels", path_str(&worked_example()), "--assign", "flow"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "candidate,panelists\nc1,p2\nc2,p1\n");
}

#[test]
fn schedule_csv_and_graph_output() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.edges");
    let o = panelkit(&[
        "schedule",
        path_str(&worked_example()),
        "--graph-out",
        path_str(&graph),
    ]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("candidate,panelists,slot_index,start_minute,end_minute")
    );
    assert_eq!(lines.next(), Some("c1,p2,0,0,30"));
    assert_eq!(lines.next(), Some("c2,p1,0,0,30"));
    assert!(fs::read_to_string(&graph).unwrap().contains("p edge 2 0"));
}

#[test]
fn panels_feed_metrics_and_schedule() {
    let dir = TempDir::new().unwrap();
    let panels = dir.path().join("panels.json");
    let ex = worked_example();
    let o = panelkit(&[
        "panels",
        path_str(&ex),
        "--assign",
        "edge",
        "--format",
        "json",
        "--out",
        path_str(&panels),
    ]);
    assert_eq!(code(&o), 0);
    let o = panelkit(&[
        "metrics",
        path_str(&ex),
        "--panels",
        path_str(&panels),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["avg_candidate"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    let o = panelkit(&[
        "schedule",
        path_str(&ex),
        "--panels",
        path_str(&panels),
        "--format",
        "table",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("elapse_slots 1"));
}

#[test]
fn color_verb_reads_edge_lists() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("c5.edges");
    fs::write(&g, "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    for algo in ["chaitin", "ga", "aco"] {
        let o = panelkit(&["color", path_str(&g), "--color", algo, "--format", "json"]);
        assert_eq!(code(&o), 0, "{algo}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["k"], 3, "{algo}");
    }
    let o = panelkit(&["color", path_str(&g)]);
    assert_eq!(stdout(&o).lines().count(), 5);
    fs::write(&g, "e 1 x\n").unwrap();
    assert_eq!(code(&panelkit(&["color", path_str(&g)])), 4);
}

#[test]
fn gen_is_seeded_and_runs_end_to_end() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = panelkit(&[
            "gen",
            "--panelists",
            "12",
            "--candidates",
            "20",
            "--topics",
            "6",
            "--seed",
            "5",
            "--max-load",
            "8",
            "--out",
            path_str(out),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let runs: Vec<Value> = (0..2)
        .map(|_| {
            let o = panelkit(&["run", path_str(&a), "--color", "aco", "--format", "json"]);
            assert_eq!(code(&o), 0);
            let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            v.as_object_mut().unwrap().remove("timings");
            v
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn bench_prints_the_grid() {
    let o = panelkit(&["bench", path_str(&worked_example()), "--repetitions", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    for combo in ["edge       chaitin", "flow       aco"] {
        assert!(out.contains(combo), "{out}");
    }
    let o = panelkit(&[
        "bench",
        path_str(&worked_example()),
        "--repetitions",
        "1",
        "--format",
        "csv",
    ]);
    assert!(stdout(&o).starts_with("assign,color,paneling_value"));
}
