use std::path::PathBuf;

use sip3_cli::fixtures::{check, corpus};
use sip3_cli::format::{emit_graph, parse_graph};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sip3").chain(args.iter().copied());
    let code = sip3_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn sip_on_k5_minus_f_prints_no_and_witness() {
    let (code, out, _) = run(&["sip", &fixture("k5_minus_f.g"), "--nonedge", "0,1", "--dim", "3"]);
    assert_eq!(code, 1);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("no"));
    assert!(out.contains("witness K5"));
    assert_eq!(out.matches("branch ").count(), 5);
}

#[test]
fn p3t_on_v8_is_no() {
    let (code, out, _) = run(&["p3t", &fixture("v8.g")]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("no"));
}

#[test]
fn collinear_path_ccs() {
    let args = ["ccs", &fixture("path.json"), "--nonedge", "0,2", "--dim", "1", "--samples", "2000", "--seed", "7"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("{[1,1],[9,9]}"));
    assert_eq!(run(&args).1, out, "same seed, same report");
}

#[test]
fn certify_then_verify() {
    let dir = std::env::temp_dir().join(format!("sip3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("fig16c.json");
    let (code, out, _) = run(&["certify", &fixture("fig16c.g"), "--nonedge", "0,1", "--out", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("claimed_values"));
    let (code, out, _) = run(&["verify-cert", cert.to_str().unwrap(), "--samples", "300"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("pass\n"));
    let unit = dir.join("unit.json");
    run(&["certify", "--base", "k5-unit", "--out", unit.to_str().unwrap()]);
    let (code, out, _) = run(&["verify-cert", unit.to_str().unwrap(), "--samples", "300"]);
    assert_eq!(code, 1);
    assert!(out.contains("positive values false"));
    let (code, out, _) = run(&["certify", &fixture("winged_k5.g"), "--nonedge", "0,1"]);
    assert_eq!((code, out.as_str()), (1, "none\n"));
}

#[test]
fn verdict_commands() {
    assert_eq!(run(&["sip", &fixture("winged_k5.g"), "--nonedge", "0,1"]).0, 0);
    assert_eq!(run(&["minimal", &fixture("k222_minus_f.g"), "--nonedge", "0,2"]), (0, "yes\n".into(), String::new()));
    assert_eq!(run(&["edge-type", &fixture("fig16c.g"), "--nonedge", "0,1", "--edge", "0,2"]).1, "type 3\n");
    assert_eq!(run(&["flatten", &fixture("petersen.g")]).0, 1);
    assert_eq!(run(&["flatten", &fixture("v8.g"), "--dim", "3"]).0, 0);
    let (code, out, _) = run(&["minor", &fixture("petersen.g"), "--pattern", "K5"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("branch ").count(), 5);
    assert_eq!(run(&["minor", &fixture("prism.g"), "--pattern", "K5"]).0, 1);
    let (code, out, _) = run(&["atoms", &fixture("path_k3.g")]);
    assert_eq!(code, 0);
    assert_eq!(out, "atom {0,1}\natom {1,2}\ncms {1}\n");
}

#[test]
fn winged_minor_on_the_wing() {
    let dir = std::env::temp_dir().join(format!("sip3-wing-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.g");
    std::fs::write(&path, emit_graph(&sip3::patterns::winged_k5())).unwrap();
    let (code, out, _) = run(&["winged", path.to_str().unwrap(), "--wing", "0,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("yes winged-K5"));
}

#[test]
fn errors_exit_2() {
    assert_eq!(run(&["sip", &fixture("k5_minus_f.g"), "--nonedge", "0,2"]).0, 2);
    assert_eq!(run(&["sip", &fixture("k5_minus_f.g"), "--nonedge", "0,1", "--dim", "4"]).0, 2);
    assert_eq!(run(&["p3t", "/nonexistent.g"]).0, 2);
    assert_eq!(run(&["p3t", &fixture("v8.g"), "--frobnicate"]).0, 2);
    assert_eq!(run(&["teleport"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn json_reports() {
    let (code, out, _) = run(&["--json", "sip", &fixture("k5_minus_f.g"), "--nonedge", "0,1"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sip"], false);
    assert_eq!(v["witness"], "K5");
    let (_, _, err) = run(&["--json", "sip", &fixture("k5_minus_f.g"), "--nonedge", "0,2"]);
    assert!(serde_json::from_str::<serde_json::Value>(&err).unwrap()["error"].is_string());
}

#[test]
fn fixture_files_match_the_corpus() {
    for e in corpus() {
        let text = std::fs::read_to_string(fixture(&format!("{}.g", e.name))).unwrap();
        assert_eq!(text, e.file_text(), "{} is stale; rerun `sip3 fixtures --write fixtures`", e.name);
        let g = parse_graph(&text).unwrap();
        assert_eq!(g, e.graph);
        let normalized: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(emit_graph(&g), normalized);
    }
}

#[test]
fn every_fixture_expectation_holds() {
    for e in corpus() {
        for line in check(&e).unwrap() {
            assert!(line.passed(), "{line:?}");
        }
    }
    assert_eq!(run(&["fixtures"]).0, 0);
}
