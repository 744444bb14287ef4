use std::process::{Command, Output};

use serde_json::Value;

fn matchavg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchavg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn stats_for_k4() {
    let o = matchavg(&["stats", "--graph6", "C~"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let record = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(record["profile"], serde_json::json!([1, 6, 3]));
    assert_eq!(record["M"], 10);
    assert_eq!(record["S"], 12);
    assert_eq!(record["av"]["num"], 6);
    assert_eq!(record["av"]["den"], 5);
    assert_eq!(record["mu"], 2);
}

#[test]
fn stats_for_named_family_and_edge_list() {
    let o = matchavg(&["stats", "--family", "cycle", "--n", "4", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"num\":8") || stdout(&o).contains("\"num\": 8"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    std::fs::write(&path, "5 4\n0 1\n1 2\n2 3\n1 4\n").unwrap();
    let o = matchavg(&["stats", "--edge-list", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8/7"), "{}", stdout(&o));
}

#[test]
fn bad_graph_input_is_a_usage_error() {
    assert_eq!(matchavg(&["stats", "--graph6", "C"]).status.code(), Some(2));
    assert_eq!(matchavg(&["stats"]).status.code(), Some(2));
    assert_eq!(matchavg(&["stats", "--family", "cycle", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn missing_edge_list_is_an_io_error() {
    assert_eq!(matchavg(&["stats", "--edge-list", "/nonexistent/graph.txt"]).status.code(), Some(3));
}

#[test]
fn poly_reports_roots() {
    let o = matchavg(&["poly", "--family", "path", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let record = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(record["zero_count"], 0);
    assert!((record["matching_energy"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn energy_passes_on_c4() {
    let o = matchavg(&["energy", "--family", "cycle", "--n", "4", "--alpha", "1/4,4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_path_max_passes() {
    let o = matchavg(&["verify", "--theorem", "path-max", "--n", "2..10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v[0]["theorem_id"], "path-max");
    assert_eq!(v[0]["violations"], serde_json::json!([]));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS path-max"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(matchavg(&["verify", "--theorem", "no-such-theorem"]).status.code(), Some(2));
    assert_eq!(matchavg(&["verify", "--theorem", "path-max", "--n", "2..40"]).status.code(), Some(2));
    assert_eq!(matchavg(&["verify", "--theorem", "path-max", "--corpus", "graphs"]).status.code(), Some(2));
    assert_eq!(matchavg(&["verify", "--theorem", "path-max", "--workers", "2", "--worker-id", "2"]).status.code(), Some(2));
    assert_eq!(matchavg(&["verify", "--theorem", "spiders", "--alpha", "-1"]).status.code(), Some(2));
}

#[test]
fn verify_unwritable_output_is_an_io_error() {
    let o = matchavg(&["verify", "--theorem", "spiders", "--out", "/nonexistent/dir/report.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    let out = dir.path().join("report.csv");
    std::fs::write(
        &config,
        format!("theorem = \"star-min\"\nn = \"2..6\"\ncorpus = \"trees\"\nformat = \"csv\"\nout = \"{}\"\n", out.display()),
    )
    .unwrap();
    let o = matchavg(&["verify", "--config", config.to_str().unwrap(), "--n", "2..8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("theorem_id,"));
    assert!(text.contains("star-min,\"trees n=2..8\""), "{text}");

    std::fs::write(&config, "theorem = \"star-min\"\nbogus = 1\n").unwrap();
    assert_eq!(matchavg(&["verify", "--config", config.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(matchavg(&["verify", "--config", "/nonexistent/run.toml"]).status.code(), Some(3));
}

#[test]
fn verify_shards_cover_corpus() {
    let total: u64 = (0..3)
        .map(|id| {
            let id = id.to_string();
            let o = matchavg(&["verify", "--theorem", "quotient-lemma", "--n", "1..10", "--workers", "3", "--worker-id", &id]);
            assert_eq!(o.status.code(), Some(0));
            json(&o)[0]["corpus_size"].as_u64().unwrap()
        })
        .sum();
    assert_eq!(total, 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47 + 106);
}

#[test]
fn enumerate_counts_and_shards() {
    let o = matchavg(&["enumerate", "--n", "10", "--count"]);
    assert_eq!(stdout(&o).trim(), "106");
    let o = matchavg(&["enumerate", "--n", "6", "--corpus", "graphs", "--count"]);
    assert_eq!(stdout(&o).trim(), "156");
    let o = matchavg(&["enumerate", "--n", "5", "--corpus", "connected"]);
    assert_eq!(stdout(&o).lines().count(), 21);
    let shards: usize = (0..4)
        .map(|id| {
            let id = id.to_string();
            let o = matchavg(&["enumerate", "--n", "9", "--workers", "4", "--worker-id", &id]);
            stdout(&o).lines().count()
        })
        .sum();
    assert_eq!(shards, 47);
    assert_eq!(matchavg(&["enumerate", "--n", "9", "--corpus", "graphs"]).status.code(), Some(2));
    assert_eq!(matchavg(&["enumerate", "--n", "5", "--out", "/nonexistent/dir/x"]).status.code(), Some(3));
}

#[test]
fn search_reports_findings() {
    let o = matchavg(&["search", "--n", "2..9", "--alpha", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["theorem_id"], "weighted-tree-search");
}
