use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn c2lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_k5_all_routes() {
    let dir = TempDir::new().unwrap();
    let k5 = write(&dir, "k5.g6", "D~{\n");
    let out = c2lab(&[
        "compute", "--graph", &k5, "--vertex", "0", "--prime", "2,3", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let reports = report["graphs"][0]["vertices"][0]["reports"]
        .as_array()
        .unwrap();
    assert_eq!(reports.len(), 2);
    for (r, want) in reports.iter().zip([1, 2]) {
        assert_eq!(r["agree"], true);
        for route in ["route_direct", "route_denom", "route_partition"] {
            assert_eq!(r[route]["residue"], want, "{route} at p = {}", r["prime"]);
        }
    }
}

#[test]
fn compute_triangle_from_json() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.json", r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let out = c2lab(&[
        "compute", "--graph", &c3, "--prime", "5", "--route", "direct", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["graphs"][0]["vertices"][0]["reports"][0];
    assert_eq!(r["route_direct"]["residue"], 1);
    assert_eq!(r["route_direct"]["raw_count"], 25);
}

#[test]
fn human_output_names_the_graph() {
    let dir = TempDir::new().unwrap();
    let k5 = write(&dir, "k5.g6", "D~{\n");
    let out = c2lab(&["compute", "--graph", &k5, "--vertex", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("graph D~{"), "{text}");
}

#[test]
fn verify_completion_small_corpus() {
    let dir = TempDir::new().unwrap();
    let corpus = write(&dir, "corpus.g6", "# quartic\nD~{\nE}lw\n\n");
    let out = c2lab(&[
        "verify-completion",
        "--corpus",
        &corpus,
        "--primes",
        "2",
        "--json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json(&out);
    let graphs = report["graphs"].as_array().unwrap();
    assert_eq!(graphs.len(), 2);
    for g in graphs {
        assert_eq!(g["verdicts"][0]["holds"], true);
        assert!(g["failures"].as_array().unwrap().is_empty());
    }
}

#[test]
fn sweep_involutions_on_the_octahedron() {
    let dir = TempDir::new().unwrap();
    let oct = write(&dir, "oct.g6", "E}lw\n");
    let out = c2lab(&[
        "sweep-involutions",
        "--corpus",
        &oct,
        "--prime",
        "3",
        "--json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let sweeps = json(&out)["graphs"][0]["sweeps"]
        .as_array()
        .unwrap()
        .clone();
    assert!(!sweeps.is_empty());
}

#[test]
fn check_identities_is_seeded() {
    let a = c2lab(&["check-identities", "--seed", "7", "--points", "2", "--json"]);
    let b = c2lab(&["check-identities", "--seed", "7", "--points", "2", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let ids = &json(&a)["identities"];
    assert_eq!(ids["seed"], 7);
    for o in ids["outcomes"].as_array().unwrap() {
        assert_eq!(o["failures"], 0, "{}", o["name"]);
    }
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.g6");
    assert_eq!(
        c2lab(&["compute", "--graph", path_str(&missing)])
            .status
            .code(),
        Some(2)
    );

    let bad = write(&dir, "bad.json", "{not json");
    assert_eq!(c2lab(&["compute", "--graph", &bad]).status.code(), Some(2));

    let k5 = write(&dir, "k5.g6", "D~{\n");
    assert_eq!(
        c2lab(&["compute", "--graph", &k5, "--prime", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        c2lab(&["compute", "--graph", &k5, "--vertex", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(c2lab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(c2lab(&["compute"]).status.code(), Some(2));
}

#[test]
fn budget_refusal_exits_3() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.json", r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let out = c2lab(&[
        "compute", "--graph", &c3, "--prime", "3", "--route", "direct", "--budget", "1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let refusals = json(&out)["graphs"][0]["budget_refusals"]
        .as_array()
        .unwrap()
        .len();
    assert_eq!(refusals, 1);
}

#[test]
fn non_quartic_completion_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let c4 = write(
        &dir,
        "c4.json",
        r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#,
    );
    let out = c2lab(&["verify-completion", "--corpus", &c4]);
    assert_eq!(out.status.code(), Some(2));
}
