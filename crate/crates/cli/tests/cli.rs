use std::process::{Command, Output};

use gpcolor::crc::CrcReport;
use gpcolor::{construct_a5, GpParams, SearchReport};
use serde_json::Value;

fn gpcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpcolor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = gpcolor(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn build_petersen() {
    let o = gpcolor(&["build", "--n", "5", "--k", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("vertices: 10"));
    assert!(out.contains("edges: 15"));
    assert!(out.contains("a_i -> i, b_i -> 5 + i"));
}

#[test]
fn build_rejects_half_skip() {
    let o = gpcolor(&["build", "--n", "6", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k must satisfy 2k < n"));
}

#[test]
fn build_json_has_sorted_edges() {
    let v = json(&["build", "--n", "8", "--k", "3", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    let edges: Vec<(usize, usize)> = serde_json::from_value(v["edges"].clone()).unwrap();
    assert_eq!(edges.len(), 24);
    let mut sorted = edges.clone();
    sorted.sort();
    assert_eq!(edges, sorted);
    assert_eq!(v["labels"][8], "b_0");
}

#[test]
fn verify_a3_coloring() {
    let c = "1212121212121212";
    let o = gpcolor(&["verify", "--n", "8", "--k", "3", "--coloring", c, "--matrix", "A3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ok");
    let derived = json(&["verify", "--n", "8", "--k", "3", "--coloring", c, "--format", "json"]);
    assert_eq!(derived["matrix"], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(derived["matrix_id"], "A3");
}

#[test]
fn verify_rejects_monochromatic() {
    let o = gpcolor(&["verify", "--n", "8", "--k", "3", "--coloring", &"1".repeat(16), "--matrix", "A3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not surjective"));
    let o = gpcolor(&["verify", "--n", "8", "--k", "3", "--coloring", "1212"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gpcolor(&["verify", "--n", "8", "--k", "3", "--coloring", "121212121212121x"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_lists_violations_after_a_flip() {
    let v = json(&[
        "verify",
        "--n",
        "8",
        "--k",
        "3",
        "--coloring",
        "2212121212121212",
        "--matrix",
        "A3",
        "--format",
        "json",
    ]);
    assert_eq!(v["perfect"], false);
    let vertices: Vec<u64> =
        v["violations"].as_array().unwrap().iter().map(|x| x["vertex"].as_u64().unwrap()).collect();
    // a_0 itself and its neighbors a_1, a_7, b_0 see a changed profile
    assert_eq!(vertices, vec![0, 1, 7, 8]);
}

#[test]
fn search_a2_on_gp_9_3_is_empty() {
    let o = gpcolor(&["search", "--n", "9", "--k", "3", "--matrix", "A2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SearchReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.count, 0);
    assert_eq!(r.schema_version, 1);
}

#[test]
fn search_a5_finds_the_construction() {
    let o = gpcolor(&["search", "--n", "10", "--k", "3", "--matrix", "A5", "--collect", "--format", "json"]);
    let r: SearchReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.count >= 1);
    let c = construct_a5(GpParams::new(10, 3).unwrap()).unwrap();
    assert!(r.witnesses.contains(&c));
    // parse(print(x)) = x
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, stdout(&o));
}

#[test]
fn search_all_with_oracle() {
    let v = json(&["search", "--n", "7", "--k", "3", "--matrix", "all", "--oracle", "--format", "json"]);
    let reports: Vec<SearchReport> = serde_json::from_value(v).unwrap();
    assert_eq!(reports.len(), 6);
    for r in &reports {
        assert_eq!(r.oracle_count, Some(r.count));
    }
    let o = gpcolor(&["search", "--n", "7", "--k", "3", "--oracle"]);
    assert!(stdout(&o).contains("(agrees)"));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn search_dedup_and_workers() {
    let seq =
        json(&["search", "--n", "10", "--k", "3", "--matrix", "A1", "--collect", "--dedup-swap", "--format", "json"]);
    let par = json(&[
        "search",
        "--n",
        "10",
        "--k",
        "3",
        "--matrix",
        "A1",
        "--collect",
        "--dedup-swap",
        "--workers",
        "3",
        "--format",
        "json",
    ]);
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(seq["dedup_swap"], true);
    assert_eq!(seq["count"], 6);
    assert_eq!(strip(seq), strip(par));
}

#[test]
fn search_usage_errors() {
    let o = gpcolor(&["search", "--n", "9", "--k", "3", "--matrix", "A7"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gpcolor(&["search", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gpcolor(&["search", "--n", "14", "--k", "3", "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_k3() {
    let v = json(&["table", "--k", "3", "--n", "7..12", "--format", "json"]);
    assert_eq!(v["disagreements"], 0);
    let cells = v["cells"].as_array().unwrap();
    let yes = |m: &str| -> Vec<u64> {
        cells.iter().filter(|c| c["matrix"] == m && c["exists"] == true).map(|c| c["n"].as_u64().unwrap()).collect()
    };
    assert_eq!(yes("A1"), vec![7, 8, 9, 10, 11, 12]);
    assert!(yes("A2").is_empty());
    assert_eq!(yes("A3"), vec![8, 10, 12]);
    assert_eq!(yes("A4"), vec![8, 12]);
    assert_eq!(yes("A5"), vec![10]);
    assert_eq!(yes("A6"), vec![8, 10, 12]);
    // deterministic
    assert_eq!(v, json(&["table", "--k", "3", "--n", "7..12", "--format", "json"]));
}

#[test]
fn table_k2_markdown() {
    let o = gpcolor(&["table", "--k", "2", "--n", "5..12"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("| A2 | no | yes | no | no | yes | no | no | yes | GP(3m,2) |"));
    assert!(out.contains("| A5 | yes | no | no | no | no | yes | no | no | GP(5m,2) |"));
    assert!(out.contains("disagreements: 0"));
    assert!(out.contains("not proved for all n"));
}

#[test]
fn table_rejects_bad_ranges() {
    assert_eq!(gpcolor(&["table", "--k", "3", "--n", "12..7"]).status.code(), Some(1));
    assert_eq!(gpcolor(&["table", "--k", "3", "--n", "5..9"]).status.code(), Some(1));
}

#[test]
fn table_csv() {
    let o = gpcolor(&["table", "--k", "3", "--n", "10", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("n,k,matrix,admissible,exists,predicted,agrees,nodes_explored\n"));
    assert!(out.contains("\n10,3,A4,true,false,no,true,"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn crc_gp_9_3() {
    let v = json(&["crc", "--n", "9", "--k", "3", "--size", "9", "--expect", "2", "--format", "json"]);
    let rules = v["rules_matching_expected"].as_array().unwrap();
    assert!(!rules.is_empty());
    let report: CrcReport = serde_json::from_value(v.clone()).unwrap();
    assert!(report.codes.iter().all(|c| !c.perfect));
    assert_eq!(report.perfect_count, 0);
}

#[test]
fn crc_petersen_singletons() {
    let v = json(&["crc", "--n", "5", "--k", "2", "--size", "1", "--format", "json"]);
    assert_eq!(v["codes"].as_array().unwrap().len(), 10);
}

#[test]
fn crc_guard() {
    let o = gpcolor(&["crc", "--n", "14", "--k", "3", "--size", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("26"));
}

#[test]
fn construct_prints_coloring() {
    let o = gpcolor(&["construct", "--n", "8", "--k", "3", "--matrix", "A4"]);
    assert_eq!(stdout(&o).trim(), "1222122222122212");
    assert_eq!(gpcolor(&["construct", "--n", "10", "--k", "3", "--matrix", "A4"]).status.code(), Some(1));
}
