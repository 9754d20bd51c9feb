use std::process::{Command, Output};

use braidaug::braid::parse_braid;
use braidaug::cluster::{initial_seed, seed_from_json, seeds_equal, SeedJson};
use braidaug::verify::{default_goldens, DEFAULT_GOLDENS};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidaug")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("braidaug-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn dga_text_and_json() {
    let o = run(&["dga", "1,2,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d a1 = b1 b3 + b2 + t1^-1"));
    let v = json(&["dga", "1,1,1"]);
    assert_eq!(v["equations"].as_array().unwrap().len(), 2);
    assert_eq!(v["differentials"].as_object().unwrap().len(), 2);
    assert!(v["eliminated"].is_string());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["dga", ""]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mutate", "1,1,1", "--seq", "x"]).status.code(), Some(2));
    assert_eq!(run(&["dga", "1,2", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn seed_json_round_trips() {
    let v = json(&["seed", "1,3,1,2,1,3,1,2"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let parsed: SeedJson = serde_json::from_value(v).unwrap();
    let w = parse_braid("1,3,1,2,1,3,1,2", None).unwrap();
    assert!(seeds_equal(&seed_from_json(&parsed).unwrap(), &initial_seed(&w)));
}

#[test]
fn seed_dot_boxes_frozen_vertices() {
    let o = run(&["seed", "1,1,1", "--format", "dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("shape=box"));
}

#[test]
fn mutate_notes_order_and_rejects_frozen() {
    let o = run(&["mutate", "1,1,1", "--seq", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("application order"));
    assert_eq!(run(&["mutate", "1,1,1", "--seq", "3"]).status.code(), Some(1));
}

#[test]
fn filling_reproduces_the_worked_chart() {
    let g = default_goldens();
    let plan = temp_file("plan.json", &serde_json::to_string(&g.filling.plan).unwrap());
    let v = json(&["filling", &g.filling.word, "--plan", plan.to_str().unwrap()]);
    let seq: Vec<usize> = serde_json::from_value(v["mutation_sequence"].clone()).unwrap();
    assert_eq!(seq, g.filling.sequence);
    let rel = v["relations"].as_array().unwrap();
    assert_eq!(rel.len(), 4);
    assert_eq!(rel[0], "p1 p4 p7 t1 = 1");
    assert_eq!(v["chart"]["A'1"], "p7");
    assert!(v["final_seed"]["vertices"].is_array());
    let _ = std::fs::remove_file(plan);
}

#[test]
fn census_of_the_trefoil() {
    let v = json(&["census", "1,1,1"]);
    assert_eq!(v["plans"], 6);
    assert!(v["groups"].as_u64().unwrap() <= 5);
    assert_eq!(v["representatives"].as_array().unwrap().len() as u64, v["groups"].as_u64().unwrap());
}

#[test]
fn verify_passes_and_names_corruption() {
    let o = run(&["verify", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 8);

    let bad = DEFAULT_GOLDENS.replacen("\"p7\"", "\"p6\"", 1);
    assert_ne!(bad, DEFAULT_GOLDENS);
    let path = temp_file("goldens.json", &bad);
    let o = run(&["verify", "--trials", "1", "--goldens", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] 4"), "{}", stdout(&o));
    let _ = std::fs::remove_file(path);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["census", "1,2,1,2", "--format", "json"]);
    let b = run(&["census", "1,2,1,2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
