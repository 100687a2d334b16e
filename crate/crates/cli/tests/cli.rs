use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use efcheck_core::instances::x_bar;
use efcheck_core::HPolyhedron;
use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(name).to_string_lossy().into_owned()
}

fn efcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_reports_exact_optimum() {
    let out = efcheck(&["solve", "--lp", &data("lp_small.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "OPTIMAL");
    assert_eq!(r["value"], "21/5");
    assert_eq!(r["point"], serde_json::json!(["9/5", "12/5"]));
}

#[test]
fn vertices_of_x_bar() {
    let out = efcheck(&["vertices", "--poly", &data("x_bar.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertices"], serde_json::json!([["2", "1", "5"]]));
}

#[test]
fn ef_exit_codes_follow_the_verdict() {
    let refuted = efcheck(&[
        "ef",
        "--definition",
        "standard",
        "--ef-poly",
        &data("u_bar_unlinked.json"),
        "--target",
        &data("x_bar.json"),
    ]);
    assert_eq!(refuted.status.code(), Some(1));
    let r = json(&refuted);
    assert_eq!(r["outcome"], "REFUTED");
    assert!(r["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n == "projection kind: FULL_SPACE"));

    let holds = efcheck(&[
        "ef",
        "--definition",
        "map",
        "--ef-poly",
        &data("u_bar.json"),
        "--target",
        &data("x_bar.json"),
    ]);
    assert_eq!(holds.status.code(), Some(0));
    assert_eq!(json(&holds)["outcome"], "HOLDS");
}

#[test]
fn projection_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("projection.json");
    let out = efcheck(&[
        "project",
        "--poly",
        &data("u_prime.json"),
        "--keep-block",
        "X",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = fs::read(&report).unwrap();
    assert_eq!(written, out.stdout);
    let r: Value = serde_json::from_slice(&written).unwrap();
    let description = serde_json::to_string(&r["description"]).unwrap();
    let p = HPolyhedron::from_json(&description).unwrap();
    assert!(p.equals(&x_bar()).unwrap());
}

#[test]
fn mstp_and_augment_and_auxiliary_succeed() {
    let out = efcheck(&["mstp", "--graph", &data("k3.txt"), "--model", "all", "--paradox"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["kruskal"]["weight"], "3");
    assert_eq!(r["models"].as_array().unwrap().len(), 3);

    let out = efcheck(&["augment", "--paper-example-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["augmented"]["polyhedron"]["rows"][0], "14 x1 + 7 x2 <= 42");

    let out = efcheck(&[
        "auxiliary",
        "--u",
        &data("u_bar.json"),
        "--map",
        &data("link_a.json"),
        "--alpha",
        "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["two_step"]["x_star"], serde_json::json!(["2", "1", "5"]));
    assert_eq!(r["two_step"]["value"], "2");
}

#[test]
fn malformed_input_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"vars\": [\n  {\"name\": }]}").unwrap();
    let out = efcheck(&["vertices", "--poly", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2 column"), "{err}");

    let graph = dir.path().join("g.txt");
    fs::write(&graph, "n 3\n1 2 1\n2 3 x\n").unwrap();
    let out = efcheck(&["mstp", "--graph", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3 column 5"));

    assert_eq!(efcheck(&["vertices"]).status.code(), Some(2));
}

#[test]
fn basis_limit_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_efcheck"))
        .args(["vertices", "--poly", &data("x_bar.json")])
        .env("EFCHECK_LIMIT_BASES", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}
