use std::process::Command;

use incidence_toric::cli::{execute, Cli};
use clap::Parser;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, i32) {
    let cli = Cli::try_parse_from(std::iter::once("inctor").chain(args.iter().copied())).unwrap();
    execute(&cli)
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let (body, code) = run(args);
    (serde_json::from_str(&body).unwrap_or_else(|e| panic!("{e}: {body}")), code)
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_inctor")).args(args).output().unwrap()
}

#[test]
fn markov_632_has_thirty_generators() {
    let (v, code) = run_json(&["toric", "markov", "-n", "6", "-k", "3", "-t", "2", "--no-meta"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "toric markov");
    assert_eq!(v["result"]["count"], 30);
    assert_eq!(v["result"]["degrees"]["4"], 15);
    assert_eq!(v["result"]["degrees"]["6"], 15);
    let first = &v["result"]["binomials"][0];
    assert!(first["plus"].is_object() && first["minus"].is_object());
}

#[test]
fn octahedron_file_verifies() {
    let (v, code) = run_json(&["complex", "verify", &data("octahedron.cplx")]);
    assert_eq!(code, 0);
    let r = &v["result"];
    for key in ["pure", "strongly_connected", "pseudomanifold", "boundaryless", "normal", "balanced", "orientable", "facet_ridge_bipartite"] {
        assert_eq!(r[key], true, "{key}");
    }
    assert_eq!(r["dimension"], 2);
}

#[test]
fn bundled_complexes_round_trip() {
    use incidence_toric::complexes::*;
    let read = |n: &str| SimplicialComplex::parse(&std::fs::read_to_string(data(n)).unwrap()).unwrap();
    assert_eq!(read("octahedron.cplx"), crosspolytope(3).unwrap());
    assert_eq!(read("crosspolytope4.cplx"), crosspolytope(4).unwrap());
    assert_eq!(read("crossflip.cplx"), crossflip_example());
    assert_eq!(read("pinched_torus.cplx"), pinched_torus());
}

#[test]
fn crossflip_binomial_has_degree_seven() {
    let (v, code) = run_json(&["complex", "binomial", &data("crossflip.cplx"), "--no-meta"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["degree"], 7);
    assert_eq!(v["result"]["n"], 9);
}

#[test]
fn pinched_torus_binomial_is_refused() {
    let (body, code) = run(&["complex", "binomial", &data("pinched_torus.cplx")]);
    assert_eq!(code, 1);
    assert!(body.contains("not normal"), "{body}");
}

#[test]
fn output_is_deterministic_without_meta() {
    let args = ["threepoint", "det", "-n", "6", "--emit", "f,g", "--no-meta"];
    let (a, _) = run(&args);
    let (b, _) = run(&args);
    assert_eq!(a, b);
    assert!(!a.contains("timestamp"));
    let (with_meta, _) = run(&args[..6]);
    assert!(with_meta.contains("timestamp"));
}

#[test]
fn det_three_text() {
    let (body, code) = run(&["threepoint", "det", "-n", "3", "--emit", "f,g,det", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(body.contains("f = 2*c123\n"), "{body}");
    assert!(body.contains("g = 1\n"), "{body}");
    assert!(body.contains("det = 2*p12*p13*p23\n"), "{body}");
}

#[test]
fn csv_matrix() {
    let (body, code) = run(&["incidence", "matrix", "-n", "4", "-k", "2", "-t", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(body.lines().count(), 5);
    let (_, code) = run(&["toric", "markov", "-n", "4", "-k", "2", "-t", "1", "--format", "csv"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    // verification failure
    let (_, code) = run(&["threepoint", "tilde", "-n", "3"]);
    assert_eq!(code, 1);
    // budget
    let (body, code) = run(&["polytope", "volume", "-n", "6", "-k", "3", "-t", "2", "--simplex-budget", "10"]);
    assert_eq!(code, 2);
    assert!(body.contains("budget"), "{body}");
    // bad parameters
    let (_, code) = run(&["incidence", "matrix", "-n", "4", "-k", "2", "-t", "2"]);
    assert_eq!(code, 2);
    let (_, code) = run(&["incidence", "rank", "-n", "6", "-k", "3", "-t", "2", "--pair-budget", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_usage_and_success() {
    let out = binary(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = binary(&["designs", "support", "-n", "6", "-k", "3", "-t", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("minimum positive support 4 over "));
}

#[test]
fn design_check_from_file() {
    let dir = std::env::temp_dir().join(format!("inctor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("pod.json");
    std::fs::write(&good, r#"{"135": 1, "245": 1, "236": 1, "146": 1, "235": -1, "145": -1, "136": -1, "246": -1}"#).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"135": 1, "246": -1}"#).unwrap();
    let nkt = ["-n", "6", "-k", "3", "-t", "2"];
    let args = |f: &std::path::Path| -> Vec<String> {
        ["designs", "check"].iter().chain(&nkt).map(|s| s.to_string()).chain([f.display().to_string()]).collect()
    };
    let a = args(&good);
    let (v, code) = run_json(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!((code, &v["result"]["balanced"]), (0, &Value::Bool(true)));
    let a = args(&bad);
    let (v, code) = run_json(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!((code, &v["result"]["balanced"]), (1, &Value::Bool(false)));
    std::fs::remove_dir_all(dir).unwrap();
}
