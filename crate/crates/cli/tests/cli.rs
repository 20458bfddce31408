use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coreseq::kernel::paper_fixtures;

fn coreseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coreseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

#[test]
fn decide_exit_codes() {
    let o = coreseq(&["decide", "|- ~A -> (A -> B)", "--json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["status"], "provable");
    assert_eq!(v["min_height"], 3);
    assert!(v["version"].as_str().unwrap().starts_with("coreseq "));

    for mode in ["tennant", "strict-table"] {
        let o = coreseq(&["decide", "~A, A |- B", "--mode", mode, "--json"]);
        assert_eq!(code(&o), 1, "{mode}");
        assert_eq!(stdout_json(&o)["status"], "unprovable");
    }

    assert_eq!(code(&coreseq(&["decide", "~A -> (A -> B), ~A, A |- B"])), 0);
    assert_eq!(code(&coreseq(&["decide", "p |-- q"])), 2);
    assert_eq!(code(&coreseq(&["decide", "|-"])), 2);
    assert_eq!(code(&coreseq(&["decide", "p |- p", "--mode", "bogus"])), 2);
}

#[test]
fn decide_int_and_countermodel() {
    let o = coreseq(&["decide", "~A, A |- B", "--logic", "int", "--json"]);
    assert_eq!(code(&o), 0);
    let o = coreseq(&["decide", "|- p | ~p", "--logic", "int", "--json"]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["countermodel"]["worlds"].as_array().unwrap().len(), 2);
}

#[test]
fn memo_cap_is_a_resource_limit() {
    let o = Command::new(env!("CARGO_BIN_EXE_coreseq"))
        .args(["decide", "|- ~A -> (A -> B)", "--json"])
        .env("CORESEQ_MEMO_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["status"], "resource-limit");
}

#[test]
fn emitted_derivation_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq2.json");
    let o = coreseq(&["decide", "|- ~A -> (A -> B)", "--emit-derivation", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = coreseq(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["height"], 3);
}

#[test]
fn check_fixtures() {
    for name in ["d2", "d1-upper", "lemma1-left", "lemma1-right", "contradiction1", "contradiction2"] {
        let o = coreseq(&["check", fixture(name).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(stdout_json(&o)["status"], "valid");
    }

    let o = coreseq(&["check", fixture("d1-full-with-ltop").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["status"], "invalid");
    assert_eq!(v["path"], serde_json::json!([]));
    assert!(v["message"].as_str().unwrap().contains("unknown rule LTop at root"), "{v}");
}

#[test]
fn check_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture("d2")).unwrap();
    let truncated = dir.path().join("truncated.json");
    fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let o = coreseq(&["check", truncated.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["status"], "error");

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&coreseq(&["check", missing.to_str().unwrap()])), 2);
}

#[test]
fn committed_fixtures_are_current() {
    for (name, d) in paper_fixtures() {
        let on_disk = fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(on_disk, d.to_json() + "\n", "{name}");
    }
}

#[test]
fn fixtures_command_writes_every_fixture() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&coreseq(&["fixtures", "--out", dir.path().to_str().unwrap()])), 0);
    for name in paper_fixtures().keys() {
        let written = fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap();
        assert_eq!(written, fs::read_to_string(fixture(name)).unwrap());
    }
}

fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                out.push((rel, fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn repro_is_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = coreseq(&["repro", "--out", a.path().to_str().unwrap()]);
    let second = coreseq(&["repro", "--out", b.path().to_str().unwrap()]);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(tree(a.path()), tree(b.path()));

    let report = stdout_json(&first);
    let status = |id: &str| {
        report["items"]
            .as_array()
            .unwrap()
            .iter()
            .find(|i| i["id"] == id)
            .map(|i| i["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("eq1"), "unprovable");
    assert_eq!(status("eq3-d1"), "invalid");
    assert_eq!(status("ltop-verdict"), "not-admissible");
    assert_eq!(report["cross_check"]["violations"], 0);
    assert_eq!(report["cross_check"]["ex_falso_diverges"], true);
    assert!(a.path().join("verdicts/ltop-tennant.json").exists());
    assert!(a.path().join("summary.txt").exists());
}

#[test]
fn atlas_small_family() {
    let o = coreseq(&["atlas", "--atoms", "1", "--weight-cap", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["sequent", "weight", "core", "core_min_height", "int", "divergent"]
    );
    let records: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    let axiom = records.iter().find(|r| &r[0] == "p |- p").expect("p |- p is listed");
    assert_eq!(&axiom[2], "provable");
    assert_eq!(&axiom[3], "0");
}

#[test]
fn atlas_divergences_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = coreseq(&["atlas", "--atoms", "2", "--weight-cap", "6", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        (stdout_json(&o), fs::read_to_string(path).unwrap())
    };
    let (summary, table) = run("a.csv");
    let (summary_again, table_again) = run("b.csv");
    assert_eq!(summary, summary_again);
    assert_eq!(table, table_again);
    assert_eq!(summary["violations"], 0);
    assert_eq!(summary["rows"], 5078);
    let ex_falso = table.lines().find(|l| l.starts_with("\"p, ~p |- q\"") || l.starts_with("p, ~p |- q,"));
    let ex_falso = ex_falso.expect("ex falso row");
    assert!(ex_falso.ends_with(",unprovable,,provable,true"), "{ex_falso}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&coreseq(&[])), 2);
    assert_eq!(code(&coreseq(&["frobnicate"])), 2);
    assert_eq!(code(&coreseq(&["--version"])), 0);
}
