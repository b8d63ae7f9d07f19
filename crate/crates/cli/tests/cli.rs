use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kpdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpdg")).args(args).env_remove("PDG_CHECKPOINT_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = kpdg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn enumerate_is_identical_across_threads_and_batches() {
    let base = stdout(&["enumerate", "--n", "5", "--k", "3", "--threads", "1"]);
    for t in ["4", "8"] {
        assert_eq!(stdout(&["enumerate", "--n", "5", "--k", "3", "--threads", t]), base);
    }
    assert_eq!(stdout(&["enumerate", "--n", "5", "--k", "3", "--batches", "5"]), base);
    let v: Value = serde_json::from_str(&base).unwrap();
    assert_eq!(v["theta"], "5/3");
    assert_eq!(v["schema"], 1);
}

#[test]
fn batch_records_merge_to_the_full_record() {
    let dir = tempfile::tempdir().unwrap();
    for mode in [&[][..], &["--bound"][..], &["--final-no-dedup"][..]] {
        let mut full_args = vec!["enumerate", "--n", "5", "--k", "3"];
        full_args.extend_from_slice(mode);
        let full = stdout(&full_args);
        let mut files = Vec::new();
        for i in 0..5 {
            let idx = i.to_string();
            let mut args = full_args.clone();
            args.extend_from_slice(&["--batches", "5", "--batch-index", &idx]);
            let path = dir.path().join(format!("part{i}.json"));
            std::fs::write(&path, stdout(&args)).unwrap();
            files.push(path);
        }
        let mut merge_args = vec!["merge".to_string()];
        // reversed order must not matter
        merge_args.extend(files.iter().rev().map(|p| p.display().to_string()));
        let merge_args: Vec<&str> = merge_args.iter().map(String::as_str).collect();
        assert_eq!(stdout(&merge_args), full, "{mode:?}");
        let missing = kpdg(&["merge", files[0].to_str().unwrap(), files[1].to_str().unwrap()]);
        assert_eq!(missing.status.code(), Some(1));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(kpdg(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(kpdg(&["enumerate", "--n", "5"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = kpdg(&["enumerate", "--n", "6", "--k", "3", "--max-level-size", "5", "--checkpoint", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(&dir.path().display().to_string()), "{err}");
    assert_eq!(kpdg(&["sat-type", "--formula", "0 ~1 2, 0 1 ~2"]).status.code(), Some(1));
}

#[test]
fn checkpoint_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_kpdg"))
        .args(["enumerate", "--n", "5", "--k", "3"])
        .env("PDG_CHECKPOINT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Path::new(&dir.path().join("tk-k3-level4.txt")).exists());
    // a second run resumes from the files and prints the same record
    let again = Command::new(env!("CARGO_BIN_EXE_kpdg"))
        .args(["enumerate", "--n", "5", "--k", "3"])
        .env("PDG_CHECKPOINT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn record_replays_to_the_same_payload() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("run.json");
    let args = ["lift", "--theta", "2", "--k", "3", "--record", rec.to_str().unwrap()];
    let printed = stdout(&args);
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(record["payload"], printed);
    assert_eq!(record["schema"], 1);
    let argv: Vec<String> = record["command"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
    let replay = Command::new(&argv[0]).args(&argv[1..]).output().unwrap();
    assert_eq!(String::from_utf8(replay.stdout).unwrap(), printed);
    assert_eq!(serde_json::from_str::<Value>(&printed).unwrap()["lifted"], "5/3");
}

#[test]
fn forbidden_family_lines_match_the_library() {
    for k in 2..=3 {
        let out = stdout(&["gen-forbidden", "--k", &k.to_string(), "--trace"]);
        let fam = kpdg::forbidden::generate_fk(k).unwrap();
        assert_eq!(out.lines().count(), fam.len());
        for (line, m) in out.lines().zip(&fam.members) {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["graph"], m.graph.to_string());
            assert_eq!(v["trace"], m.trace.to_string());
        }
    }
}

#[test]
fn theta_table_csv() {
    let csv = stdout(&["theta-table", "--max-n", "4", "--k-range", "2:4", "--format", "csv"]);
    assert_eq!(csv, "n,k,theta\n2,2,1\n3,2,3/2\n3,3,1\n4,2,3/2\n4,3,4/3\n4,4,1\n");
    let dedup = stdout(&["theta-table", "--max-n", "4", "--k-range", "2:4", "--format", "csv", "--final-mode", "dedup"]);
    assert_eq!(dedup, csv);
}

#[test]
fn sat_commands() {
    let v = json(&["sat-minimal", "--formula", "0 1, 0 2, 1 ~3, ~2 3"]);
    assert_eq!(v["minimal"], false);
    assert_eq!(v["witnesses"][0], Value::Null);
    let v = json(&["sat-type", "--formula", "0 1 2, 0 1 ~2, ~0 1 ~3, 1 3 ~4, ~1 3 ~4"]);
    assert_eq!(v["type"], "5 3 ; 0 1 2>2 , 0 1 3 , 1 3 4>1");
    let v = json(&["sat-count", "--n", "2", "--k", "2"]);
    assert_eq!(v["functions"], 16);
    let v = json(&["sat-unate", "--formula", "~0 1, 0 1, 1 2"]);
    assert_eq!((v["unate"].as_bool(), v["distance"].as_u64()), (Some(false), Some(1)));
}

#[test]
fn density_commands() {
    let v = json(&["check-system", "--phi", "10"]);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["point"]["y"], "1/2");
    let v = json(&["check-system", "--phi", "1909/1000", "--res", "0.001"]);
    assert_eq!(v["feasible"], false);
    assert!(v["best_margin"].as_f64().unwrap() <= 0.0);
    let v = json(&["fm-density", "--rho", "1"]);
    assert!(v["f"].as_f64().unwrap().abs() < 1e-9);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k5.txt");
    let edges: Vec<String> = kpdg::bits::subsets(5, 3)
        .map(|m| kpdg::bits::ones(m).map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    std::fs::write(&file, edges.join("\n")).unwrap();
    let f = file.to_str().unwrap();
    let v = json(&["kk-check", "--file", f]);
    assert_eq!((v["edges"].as_u64(), v["simplices"].as_u64(), v["holds"].as_bool()), (Some(10), Some(5), Some(true)));
    let v = json(&["orient", "--file", f]);
    assert!(v["max_codegree"].as_u64() <= v["bound"].as_u64());
    assert_eq!(v["heads"].as_array().unwrap().len(), 10);
    let g = dir.path().join("c5.txt");
    std::fs::write(&g, "0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    assert_eq!(json(&["furedi", "--file", g.to_str().unwrap()])["holds"], true);
}

#[test]
fn check_free_reports_the_member() {
    let v = json(&["check-free", "--graph", "4 2 ; 0 1 , 1 2 , 2 3", "--family", "tk"]);
    assert_eq!(v["free"], true);
    assert_eq!(v["contains"], Value::Null);
    let v = json(&["check-free", "--graph", "4 2 ; 2 3 , 0 2>0 , 1 3>1 , 0 1"]);
    assert_eq!(v["free"], false);
}
