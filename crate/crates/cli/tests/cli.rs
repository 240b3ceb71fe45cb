use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siltkit")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

#[test]
fn algebra_check_reports_dimensions() {
    let (v, code) = json(&["algebra-check", &corpus("algebras/a2.json")]);
    assert_eq!((v["dimension"].as_u64(), code), (Some(3), 0));
    let (v, _) = json(&["algebra-check", &corpus("algebras/preproj_a3.json")]);
    assert_eq!(v["dimension"], 10);
    let (v, _) = json(&["algebra-check", &corpus("algebras/jacobian_3cycle.json")]);
    assert_eq!(v["dimension"], 6);
}

#[test]
fn infinite_dimensional_input_is_an_error() {
    let out = run(&["algebra-check", &corpus("algebras/cycle3_free.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not finite dimensional"));
}

#[test]
fn bad_usage_exits_with_one() {
    assert_eq!(run(&["silt2"]).status.code(), Some(1));
    assert_eq!(run(&["silt2", "--cap", "0", &corpus("algebras/a2.json")]).status.code(), Some(1));
    assert_eq!(run(&["algebra-check", "/nonexistent.json"]).status.code(), Some(1));
}

#[test]
fn silt2_counts_and_hasse() {
    for (name, count) in [("a2", 5), ("a3", 14), ("dual_numbers", 2), ("preproj_a2", 6), ("semisimple2", 4)] {
        let (v, code) = json(&["silt2", &corpus(&format!("algebras/{name}.json"))]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["count"], count, "{name}");
        assert_eq!(v["complete"], true);
        assert_eq!(v["hasse"]["matches_mutation"], true);
        assert_eq!(v["objects"].as_array().unwrap().len(), count);
    }
    let (v, _) = json(&["silt2", &corpus("algebras/a2.json")]);
    assert_eq!(v["hasse"]["arrows"].as_array().unwrap().len(), 5);
}

#[test]
fn kronecker_is_inconclusive() {
    let (v, code) = json(&["silt2", "--cap", "10", &corpus("algebras/kronecker.json")]);
    assert_eq!((code, v["complete"].as_bool()), (2, Some(false)));
    assert_eq!(v["count"], 10);
    assert!(v["hasse"].is_null());
}

#[test]
fn verify_reports_all_three_counts() {
    let (v, code) = json(&["verify", &corpus("algebras/a3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "verified");
    for k in ["silt2_count", "stt_count", "tors_count"] {
        assert_eq!(v[k], 14, "{k}");
    }
    assert!(v["simple_tilts"].as_array().unwrap().iter().all(|t| t["equal"] == true));
}

#[test]
fn probe_on_local_algebra() {
    let (v, code) = json(&["probe", "--depth", "3", &corpus("algebras/dual_numbers.json")]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("evidence")));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let a = corpus("algebras/preproj_a2.json");
    let one = run(&["--threads", "1", "--format", "json", "silt2", &a]);
    let two = run(&["--threads", "2", "--format", "json", "silt2", &a]);
    assert_eq!(one.stdout, two.stdout);
    assert!(!one.stdout.is_empty());
}

#[test]
fn dot_output_to_file() {
    let dir = std::env::temp_dir().join(format!("siltkit-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("a2.dot");
    let r = run(&["--format", "dot", "--out", out.to_str().unwrap(), "silt2", &corpus("algebras/a2.json")]);
    assert_eq!(r.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mutation_dynkin_verdicts() {
    for (file, verdict, ty) in [
        ("cycle3", "Dynkin", Some("A3")),
        ("a4_linear", "Dynkin", Some("A4")),
        ("a4_alternating", "Dynkin", Some("A4")),
        ("markov", "NotDynkin", None),
        ("kronecker", "NotDynkin", None),
    ] {
        let (v, code) = json(&["mutation-dynkin", &corpus(&format!("matrices/{file}.json"))]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["verdict"], verdict, "{file}");
        assert_eq!(v["type"].as_str(), ty, "{file}");
    }
}

#[test]
fn non_skew_symmetric_matrix_is_rejected() {
    let dir = std::env::temp_dir().join(format!("siltkit-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.json");
    std::fs::write(&f, "[[0, 1], [1, 0]]").unwrap();
    assert_eq!(run(&["mutation-dynkin", f.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn preprojective_output_feeds_back_in() {
    let dir = std::env::temp_dir().join(format!("siltkit-pp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("pp.json");
    for (n, dim) in [("1", 1), ("2", 4)] {
        let r = run(&["--format", "json", "preprojective", "A", n]);
        assert_eq!(r.status.code(), Some(0));
        std::fs::write(&f, &r.stdout).unwrap();
        let (v, _) = json(&["algebra-check", f.to_str().unwrap()]);
        assert_eq!(v["dimension"], dim);
    }
    std::fs::remove_dir_all(dir).unwrap();
}
