use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use nquandle_cli::{run, Cli};
use proptest::prelude::*;
use serde_json::{json, Value};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn diagram(name: &str) -> String {
    data(&format!("diagrams/{name}")).display().to_string()
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nquandle"));
    c.env_remove("QUANDLE_MAX_COSETS");
    c
}

fn exec(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn in_process(args: &[&str]) -> nquandle_cli::Outcome {
    let cli = Cli::try_parse_from(std::iter::once("nquandle").chain(args.iter().copied())).unwrap();
    run(&cli)
}

#[test]
fn trefoil_quandle_summary() {
    let (code, out, _) = exec(&["quandle", "--N", "2", &diagram("trefoil.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, json!({"total": 3, "components": [3], "group_order": 6}));
}

#[test]
fn coset_limit_exits_one() {
    let (code, out, err) = exec(&["enumerate", "--max-cosets", "10", "--N", "3,3,2,2,2,2", &diagram("k4_knotted.json")]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("exceeded 10 cosets"), "{err}");
    assert!(err.contains("k4_knotted.json"), "{err}");
}

#[test]
fn environment_cap() {
    let out = bin()
        .env("QUANDLE_MAX_COSETS", "10")
        .args(["enumerate", "--N", "3,3,2,2,2,2", &diagram("k4_knotted.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().env("QUANDLE_MAX_COSETS", "ten").args(["quandle", "--N", "2", &diagram("trefoil.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("QUANDLE_MAX_COSETS"));
    // The flag wins over the environment.
    let out = bin()
        .env("QUANDLE_MAX_COSETS", "10")
        .args(["enumerate", "--max-cosets", "5000", "--N", "3,3,2,2,2,2", &diagram("k4_knotted.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two_and_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("broken.json");
    std::fs::write(&bad, "{\"kind\": \"link\",\n \"strands\": [").unwrap();
    let (code, _, err) = exec(&["quandle", "--N", "2", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("broken.json") && err.contains("line 2"), "{err}");

    let (code, _, err) = exec(&["quandle", "--N", "2", "/no/such/file.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/no/such/file.json"), "{err}");

    let (code, _, err) = exec(&["quandle", "--N", "2,2", &diagram("trefoil.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("trefoil.json"), "{err}");

    for args in [
        vec!["quandle", "--N", "0", &diagram("trefoil.json")],
        vec!["quandle", "--N", "x", &diagram("trefoil.json")],
        vec!["enumerate", "--max-cosets", "0", &diagram("trefoil.json")],
        vec!["enumerate", "--subgroup", "zz", &diagram("trefoil.json")],
        vec!["classify", "--family", "nope", "--N", "2"],
        vec!["classify", "--family", "G", "--N", "2,2,2,2,2,2"],
        vec!["present", "--format", "csv", &diagram("trefoil.json")],
    ] {
        let (code, _, err) = exec(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["quandle", "--N", "3,3,2,2,2,2", "--verify", &diagram("k4_planar.json")],
        vec!["present", "--N", "2,3", &diagram("hopf.json")],
        vec!["enumerate", "--format", "csv", "--N", "2,2,3", &diagram("theta.json")],
    ] {
        let a = exec(&args);
        let b = exec(&args);
        assert_eq!(a.0, 0);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn classify_examples() {
    let (code, out, _) = exec(&["classify", "--family", "T_2,6", "--N", "2,4"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "Finite");

    let (_, out, _) = exec(&["classify", "--family", "G", "--params", "k=1,m=2,n=3", "--N", "2,2,2,3,2,2", "--expected-sizes"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["expected_sizes"], json!({"group_order": 12, "components": [6, 6, 6, 4, 6, 6], "total": 34}));

    let (code, out, _) = exec(&["classify", "--list"]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<Vec<Value>>(&out).unwrap().len() >= 30);
}

#[test]
fn enumerate_shapes() {
    let (_, out, _) = exec(&["enumerate", "--N", "2", "--format", "csv", &diagram("trefoil.json")]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "coset,a,a^-1,b,b^-1,c,c^-1");
    assert_eq!(lines.len(), 7);
    let (_, out, _) = exec(&["enumerate", "--N", "2", "--subgroup", "a", &diagram("trefoil.json")]);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["n_cosets"], 3);
    let (_, out, _) = exec(&["enumerate", "--N", "2", "--strategy", "felsch", &diagram("trefoil.json")]);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["n_cosets"], 6);
}

#[test]
fn quandle_tables_and_checks() {
    let (code, out, _) = exec(&["quandle", "--N", "2", "--table", &diagram("trefoil.json")]);
    assert_eq!(code, 0);
    let blocks: Vec<&str> = out.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    for b in blocks {
        assert_eq!(b.trim().lines().count(), 4);
    }
    let (code, out, _) = exec(&["verify", "--N", "2,3", &diagram("hopf.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["axioms"]["ok"], true);
    assert_eq!(v["size_identity"]["ok"], true);
    assert_eq!(v["oracle"], json!({"isomorphic": {"elements": 2}}));

    let (_, out, _) = exec(&["quandle", "--N", "2,2,3", "--timings", &diagram("theta.json")]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["timings"]["build_ms"].is_number());
}

#[test]
fn batch_runs() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let entries = json!([
        {"path": diagram("unknot.json"), "N": [3]},
        {"path": diagram("trefoil.json"), "N": "2"},
        {"path": diagram("hopf.json"), "N": [2, 2]},
    ]);
    std::fs::write(&manifest, entries.to_string()).unwrap();
    let (code, out, _) = exec(&["batch", manifest.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], 3);

    std::fs::write(dir.path().join("bad.json"), "not json").unwrap();
    let entries = json!([
        {"path": diagram("unknot.json"), "N": [3]},
        {"path": "bad.json", "N": [2]},
        {"path": diagram("hopf.json"), "N": [2, 2]},
    ]);
    std::fs::write(&manifest, entries.to_string()).unwrap();
    let (code, out, _) = exec(&["batch", manifest.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["ok"].as_u64(), v["error"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["rows"][1]["status"], "error");
    assert!(v["rows"][1]["error"].as_str().unwrap().contains("bad.json"));

    let entries = json!([{"path": diagram("trefoil.json"), "N": [2], "expect": {"total": 4}}]);
    std::fs::write(&manifest, entries.to_string()).unwrap();
    let (code, _, err) = exec(&["batch", manifest.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn regression_manifest_matches_and_is_order_independent() {
    let m = data("regression.json").display().to_string();
    let serial = exec(&["batch", &m, "--verify", "--max-cosets", "200000", "--jobs", "1"]);
    assert_eq!(serial.0, 0, "{}", serial.2);
    let v: Value = serde_json::from_str(&serial.1).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["failed"], 0);
    let parallel = exec(&["batch", &m, "--verify", "--max-cosets", "200000", "--jobs", "3"]);
    assert_eq!(serial, parallel);
}

fn mutate(text: &str, kind: u8, pos: usize, byte: u8) -> String {
    let mut bytes = text.as_bytes().to_vec();
    let pos = pos % bytes.len();
    match kind % 4 {
        0 => bytes.truncate(pos),
        1 => bytes[pos] = byte,
        2 => {
            bytes.remove(pos);
        }
        _ => bytes.insert(pos, byte),
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Corrupted inputs end with exit 0, 1 or 2, never a crash; errors name
    /// the file.
    #[test]
    fn fault_injection(
        file in prop::sample::select(vec!["trefoil.json", "hopf.json", "theta.json", "k4_planar.json"]),
        kind in any::<u8>(),
        pos in any::<usize>(),
        byte in prop::sample::select(b"{}[],:\"01-abx \n".to_vec()),
        n in prop::sample::select(vec!["2", "2,3", "2,2,3", "3,3,2,2,2,2", "0", "2,,3"]),
    ) {
        let original = std::fs::read_to_string(data(&format!("diagrams/{file}"))).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mutant.json");
        std::fs::write(&path, mutate(&original, kind, pos, byte)).unwrap();
        let out = in_process(&["quandle", "--max-cosets", "2000", "--N", n, path.to_str().unwrap()]);
        prop_assert!([0, 1, 2].contains(&out.code), "exit {} {}", out.code, out.stderr);
        if out.code == 2 && !out.stderr.contains("--N") {
            prop_assert!(out.stderr.contains("mutant.json"), "{}", out.stderr);
        }
        if out.code == 0 {
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            prop_assert!(v["total"].as_u64().unwrap() >= 1);
        }
    }
}
