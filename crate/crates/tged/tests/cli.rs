use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tged(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tged"))
        .args(args)
        .env_remove("TGED_DATA_ROOT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn schema_check(schema: &str, instance: &Value) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let load =
        |name: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap() };
    let report = jsonschema::Resource::from_contents(load("contraction_report.schema.json")).unwrap();
    let validator = jsonschema::options()
        .with_resource("json-schema:///contraction_report.schema.json", report)
        .build(&load(schema))
        .unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{instance:#}");
}

const P3: &str = "graph p3\nnode 0 point 0 0\nnode 1 point 1 0\nnode 2 point 2 0\nedge 0 1\nedge 1 2\n";
const STAR: &str = "node 0 point 0 0\nnode 1 point 1 0\nnode 2 point -1 0\nnode 3 point 0 1\nnode 4 point 0 -1\n\
                    edge 0 1\nedge 0 2\nedge 0 3\nedge 0 4\n";

#[test]
fn contract_with_zero_budget_is_identity() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.txt", P3);
    let out = tged(&["contract", s(&g), "--t", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), P3);
}

#[test]
fn contract_star_removes_two_leaves() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "star.txt", STAR);
    let report = dir.path().join("report.json");
    let contracted = dir.path().join("out.txt");
    let out = tged(&[
        "contract",
        s(&g),
        "--t",
        "2",
        "--report",
        s(&report),
        "--out",
        s(&contracted),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    schema_check("contraction_report.schema.json", &json);
    let removed: Vec<u64> = json["removed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["node"].as_u64().unwrap())
        .collect();
    assert_eq!(removed, vec![1, 2]);
    assert_eq!(
        std::fs::read_to_string(&contracted).unwrap().matches("node ").count(),
        3
    );
}

#[test]
fn contract_by_level_uses_graph_t_star() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.txt", P3);
    let report = dir.path().join("r.json");
    assert!(tged(&["contract", s(&g), "--level", "T1*", "--report", s(&report)])
        .status
        .success());
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["t_requested"], 2);
}

#[test]
fn unreadable_inputs_exit_with_parse_code() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "node 0 circle\n");
    let out = tged(&["contract", s(&bad), "--t", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let out = tged(&["ged", s(&bad), s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.path().join("nope.txt");
    assert_eq!(tged(&["contract", s(&missing)]).status.code(), Some(3));
    let broken = write(&dir, "g.gxl", "<gxl><graph id='x'>");
    assert_eq!(tged(&["ged", s(&broken), s(&broken)]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tged(&["ged"]).status.code(), Some(2));
    assert_eq!(
        tged(&["benchmark", "--dataset", "synthetic", "--levels", "T9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tged(&["contract", "x", "--t", "1", "--level", "T0"]).status.code(),
        Some(2)
    );
}

#[test]
fn ged_of_identical_files_is_zero() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.txt", P3);
    let out = tged(&["ged", s(&g), s(&g), "--t", "0", "--json"]);
    assert!(out.status.success());
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    schema_check("ged_result.schema.json", &json);
    assert_eq!(json["cost"], 0.0);
    assert_eq!(json["path"]["complete"], true);
}

#[test]
fn ged_empty_versus_single_node_costs_x_node() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", "# nothing\n");
    let one = write(&dir, "one.txt", "node 0 symbol C\n");
    let cfg = write(&dir, "cost.toml", "x_node = 2.5\ny_node = 0.5\n");
    let out = tged(&["ged", s(&empty), s(&one), "--config", s(&cfg), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    schema_check("ged_result.schema.json", &json);
    assert_eq!(json["cost"], 2.5);
    assert_eq!(json["contraction"], Value::Null);
}

#[test]
fn ged_matches_hidden_oracle_on_three_node_pair() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", P3);
    let b = write(
        &dir,
        "b.txt",
        "node 0 point 0 1\nnode 1 point 1 1\nnode 2 point 0.5 2\nedge 0 1\nedge 1 2\nedge 0 2\n",
    );
    let cfg = write(&dir, "cost.toml", "x_node = 1.5\nx_edge = 0.7\ny_node = 2.0\n");
    for search in [&["--search", "astar"][..], &["--search", "beam", "--width", "1000"][..]] {
        let mut args = vec!["ged", s(&a), s(&b), "--config", s(&cfg), "--json"];
        args.extend_from_slice(search);
        let out = tged(&args);
        let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
        let oracle = tged(&["oracle", s(&a), s(&b), "--config", s(&cfg)]);
        assert!(oracle.status.success());
        let exact: f64 = stdout(&oracle).trim().parse().unwrap();
        assert!((json["cost"].as_f64().unwrap() - exact).abs() < 1e-9);
    }
    assert!(!stdout(&tged(&["--help"])).contains("oracle"));
}

#[test]
fn ged_text_output_lists_operations() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", P3);
    let b = write(&dir, "b.txt", "node 0 point 0 0\nnode 1 point 1 1\nedge 0 1\n");
    let out = stdout(&tged(&["ged", s(&a), s(&b)]));
    assert!(out.starts_with("cost: 3\n"), "{out}");
    assert!(out.contains("node_del"));
    assert!(out.contains("edge_del"));
}

#[test]
fn bad_config_exits_with_config_code() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.txt", P3);
    let cfg = write(&dir, "cost.toml", "x_node = -1\n");
    assert_eq!(tged(&["ged", s(&g), s(&g), "--config", s(&cfg)]).status.code(), Some(4));
    let cfg = write(&dir, "cost2.toml", "colour = 1\n");
    assert_eq!(tged(&["ged", s(&g), s(&g), "--config", s(&cfg)]).status.code(), Some(4));
    assert_eq!(
        tged(&["ged", s(&g), s(&g), "--search", "beam", "--width", "0"])
            .status
            .code(),
        Some(4)
    );
    let missing = dir.path().join("missing.toml");
    assert_eq!(
        tged(&["ged", s(&g), s(&g), "--config", s(&missing)]).status.code(),
        Some(4)
    );
}

#[test]
fn missing_dataset_names_the_flag() {
    let out = tged(&["benchmark", "--dataset", "letter-high"]);
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--data-root") && err.contains("TGED_DATA_ROOT"), "{err}");
    let dir = TempDir::new().unwrap();
    let out = tged(&["stats", "--dataset", "aids", "--data-root", s(dir.path())]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("AIDS/data/train.cxl"));
}

#[test]
fn benchmark_help_has_three_examples() {
    let help = stdout(&tged(&["benchmark", "--help"]));
    for needle in ["--dataset letter-high", "--dataset aids", "--dataset synthetic"] {
        assert!(help.contains(needle), "{needle}");
    }
}

fn strip_elapsed(csv: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "elapsed_ms").unwrap();
    lines
        .map(|l| {
            let mut f: Vec<&str> = l.split(',').collect();
            f.remove(col);
            f.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn benchmark_is_deterministic_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let csv = dir.path().join(format!("b{workers}.csv"));
        let summary = dir.path().join(format!("b{workers}.json"));
        let out = tged(&[
            "benchmark",
            "--dataset",
            "synthetic",
            "--classes",
            "4",
            "--per-class",
            "3",
            "--sample",
            "6",
            "--seed",
            "3",
            "--workers",
            workers,
            "--csv",
            s(&csv),
            "--summary",
            s(&summary),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let json: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
        schema_check("benchmark_summary.schema.json", &json);
        assert_eq!(json["rows"].as_array().unwrap().len(), 16);
        let csv = std::fs::read_to_string(&csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + 6 * 16);
        outputs.push(strip_elapsed(&csv));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn classify_is_byte_identical_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "4"] {
        let path = dir.path().join(format!("c{workers}.json"));
        let out = tged(&[
            "classify",
            "--dataset",
            "synthetic",
            "--classes",
            "3",
            "--per-class",
            "2",
            "--levels",
            "T0,T2*",
            "--measures",
            "degree,pr",
            "--workers",
            workers,
            "--out",
            s(&path),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let json: Value = serde_json::from_slice(&outputs[0]).unwrap();
    schema_check("classification.schema.json", &json);
    assert_eq!(json["accuracy"].as_array().unwrap().len(), 4);
    assert_eq!(json["search"], "beam10");
}

#[test]
fn stats_report_validates() {
    let out = tged(&[
        "stats",
        "--dataset",
        "synthetic",
        "--splits",
        "train,test",
        "--classes",
        "2",
        "--per-class",
        "2",
    ]);
    assert!(out.status.success());
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    schema_check("stats.schema.json", &json);
    assert_eq!(json["pooled"]["graph_count"], 8);
    let out = tged(&["stats", "--dataset", "synthetic", "--splits", "validation"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gxl_files_are_detected() {
    let dir = TempDir::new().unwrap();
    let gxl = write(
        &dir,
        "a.gxl",
        r#"<?xml version="1.0"?><gxl><graph id="m" edgemode="undirected">
<node id="_1"><attr name="symbol"><string>C</string></attr></node>
<node id="_2"><attr name="symbol"><string>O</string></attr></node>
<edge from="_1" to="_2"><attr name="valence"><int>2</int></attr></edge>
</graph></gxl>"#,
    );
    let text = write(&dir, "b.txt", "node 0 symbol C\nnode 1 symbol O\nedge 0 1 2\n");
    let out = tged(&["ged", s(&gxl), s(&text), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["cost"], 0.0);
}

#[test]
#[should_panic(expected = "contraction_report.schema.json")]
fn schemas_reject_malformed_output() {
    let bad = serde_json::json!({ "measure": "closeness", "t_requested": 1, "removed": [] });
    schema_check("contraction_report.schema.json", &bad);
}
