use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn intcells(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intcells")).current_dir(dir).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn gen(dir: &Path, file: &str, args: &[&str]) {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", file]);
    let out = intcells(dir, &full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn full_grid_meets_the_content_bound_with_equality() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.json", &["full_grid", "--param", "n=2", "--param", "m=3"]);
    let out = intcells(dir.path(), &["verify", "THM_2_4", "--in", "g.json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["report"]["lhs"], "16");
    assert_eq!(doc["report"]["rhs"], "16");
    assert_eq!(doc["report"]["pass"], true);
    assert_eq!(doc["manifest"]["command_line"][1], "verify");
    assert_eq!(doc["manifest"]["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn pancake_projection_cells() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "p.json", &["pancake", "--param", "lengths=72,9/10"]);
    let out = intcells(dir.path(), &["cells", "--in", "p.json", "--proj", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["value"], 72);
    let best = json(&intcells(dir.path(), &["cells", "--in", "p.json"]));
    assert_eq!(best["result"]["value"], 72);
    assert_eq!(best["result"]["projection"]["indices"], serde_json::json!([1]));
}

#[test]
fn sweep_over_a_corpus_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("corpus")).unwrap();
    for seed in ["1", "2"] {
        let file = format!("corpus/k{seed}.json");
        gen(dir.path(), &file, &["random_symmetric", "--param", "n=3", "--param", "m=4", "--param", "scale=3", "--seed", seed]);
    }
    let out = intcells(dir.path(), &["sweep", "THM_4_1", "--corpus", "corpus"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["sweep"]["instances"], 2);
    assert!(doc["sweep"]["constant"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["result"]["bisection_agrees"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.json", &["full_grid", "--param", "n=2", "--param", "m=1"]);
    assert_eq!(code(&intcells(dir.path(), &["frobnicate"])), 2);
    let out = intcells(dir.path(), &["verify", "THM_9_9", "--in", "g.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("THM_2_4"));
    assert_eq!(code(&intcells(dir.path(), &["cells", "--in", "missing.json"])), 2);
    assert_eq!(code(&intcells(dir.path(), &["cells", "--in", "g.json", "--proj", "3"])), 2);
    assert_eq!(code(&intcells(dir.path(), &["gen", "nonsense"])), 2);
}

#[test]
fn violated_claim_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = intcells(dir.path(), &["verify", "LEM_4_2", "--param", "bound=1/2", "--param", "max_n=6"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["report"]["pass"], false);
}

#[test]
fn csv_report_row() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.json", &["full_grid", "--param", "n=2", "--param", "m=3"]);
    let out = intcells(dir.path(), &["verify", "THM_2_4", "--in", "g.json", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..4], ["claim", "lhs", "rhs", "pass"]);
    assert!(header.contains(&"exact|mc".to_string()) && header.contains(&"manifest".to_string()));
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].iter().take(4).collect::<Vec<_>>(), ["THM_2_4", "16", "16", "true"]);
}

#[test]
fn oracle_cross_checks_agree() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "a.json", &["box_random", "--param", "bounds=3,3", "--param", "density=0.4", "--seed", "5"]);
    gen(dir.path(), "k.json", &["random_hull", "--param", "n=3", "--param", "m=7", "--param", "scale=3", "--seed", "2"]);
    gen(dir.path(), "s.json", &["random_symmetric", "--param", "n=3", "--param", "m=4", "--param", "scale=3", "--seed", "4"]);
    let runs: [&[&str]; 7] = [
        &["cells", "--in", "a.json", "--oracle"],
        &["boxes", "--in", "a.json", "--oracle"],
        &["content", "--in", "a.json", "--oracle"],
        &["dim", "natarajan", "--in", "a.json", "--oracle"],
        &["dim", "comb", "--in", "a.json", "--t", "3/2", "--oracle"],
        &["cells", "--in", "k.json", "--oracle"],
        &["volume", "--in", "k.json", "--oracle", "--samples", "20000"],
    ];
    for args in runs {
        let out = intcells(dir.path(), args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let doc = json(&out);
        assert_eq!(doc["oracle"]["agree"], true, "{args:?}");
        assert!(!doc["oracle"]["checks"].as_array().unwrap().is_empty());
    }
    assert_eq!(code(&intcells(dir.path(), &["polar", "--in", "s.json", "--oracle", "--out", "p.json"])), 0);
    let out = intcells(dir.path(), &["verify", "SANTALO", "--in", "s.json", "--oracle", "--samples", "20000"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["oracle"]["agree"], true);
}

#[test]
fn transformed_instances_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "c.json", &["cube", "--param", "n=3", "--param", "s=1"]);
    assert_eq!(code(&intcells(dir.path(), &["project", "--in", "c.json", "--proj", "1,3", "--out", "pr.json"])), 0);
    assert_eq!(code(&intcells(dir.path(), &["section", "--in", "c.json", "--proj", "2", "--out", "se.json"])), 0);
    let vol = |f: &str| json(&intcells(dir.path(), &["volume", "--in", f]))["result"]["value"].clone();
    assert_eq!(vol("c.json"), "8");
    assert_eq!(vol("pr.json"), "4");
    assert_eq!(vol("se.json"), "2");
    // the polar of the polar is the original body
    assert_eq!(code(&intcells(dir.path(), &["polar", "--in", "c.json", "--out", "o.json"])), 0);
    assert_eq!(vol("o.json"), "4/3");
    assert_eq!(code(&intcells(dir.path(), &["polar", "--in", "o.json", "--out", "oo.json"])), 0);
    assert_eq!(vol("oo.json"), "8");
    // generator specs are accepted wherever instances are
    std::fs::write(dir.path().join("spec.json"), r#"{"family": "full_grid", "n": 2, "m": 2}"#).unwrap();
    assert_eq!(json(&intcells(dir.path(), &["content", "--in", "spec.json"]))["result"]["value"], 9);
}

#[test]
fn report_aggregates_and_fails_on_violations() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("reps")).unwrap();
    gen(dir.path(), "g.json", &["full_grid", "--param", "n=2", "--param", "m=2"]);
    assert_eq!(code(&intcells(dir.path(), &["verify", "THM_2_2", "--in", "g.json", "--out", "reps/a.json"])), 0);
    let out = intcells(dir.path(), &["report", "reps"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["passed"], 1);
    let bad = intcells(dir.path(), &["verify", "LEM_4_2", "--param", "bound=1/2", "--param", "max_n=4", "--out", "reps/b.json"]);
    assert_eq!(code(&bad), 1);
    let out = intcells(dir.path(), &["report", "reps", "--format", "csv"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("LEM_4_2"));
}
