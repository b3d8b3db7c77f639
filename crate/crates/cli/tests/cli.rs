use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use softtop_core::instance::{emit_instance, parse_instance};

fn fixture(id: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    root.join("../core/fixtures").join(format!("{id}.json")).display().to_string()
}

fn softtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_softtop"))
        .args(args)
        .env_remove("SOFTTOP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = softtop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    serde_json::from_str(&stdout(&args)).unwrap()
}

#[test]
fn axioms_on_regular_example() {
    let text = stdout(&["axioms", "--file", &fixture("FIX-6.7")]);
    let lines: Vec<&str> = text.lines().take(9).collect();
    assert_eq!(
        lines,
        [
            "T0: false",
            "T1: false",
            "T2: false",
            "regular: true",
            "T3: false",
            "normal: true",
            "T4: false",
            "COND_68: true",
            "COND_611: true",
        ]
    );
    assert!(text.contains("disjointness: "));
}

#[test]
fn closure_of_union_is_absolute() {
    let v = json(&["closure", "--set", "PuQ", "--topology", "tau1", "--file", &fixture("FIX-3.15")]);
    assert_eq!(v["closure"]["name"], "FULL");
    assert_eq!(v["closed"], false);
}

#[test]
fn validation_reports_field_for_field() {
    let v = json(&["validate", "--def", "sn", "--file", &fixture("FIX-3.8")]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["valid", "flavor", "violations"] {
        assert!(keys.contains(&k), "{keys:?}");
    }
    assert_eq!(v["valid"], false);
    assert_eq!(v["flavor"], "sn");
    let first = &v["violations"][0];
    assert_eq!(first["kind"], "INTERSECTION_NOT_MEMBER");
    assert_eq!(first["members"].as_array().unwrap().len(), 2);
    assert_eq!(first["missing"]["set"]["notation"], "⟨∅|{z}⟩");

    let v = json(&["validate", "--def", "cs", "--file", &fixture("FIX-3.8")]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn invalid_verdicts_exit_zero() {
    let out = softtop(&["validate", "--def", "hazra", "--topology", "tau1", "--file", &fixture("FIX-3.12")]);
    assert!(out.status.success());
    let out = softtop(&["base", "--candidate", "B_bad", "--file", &fixture("FIX-4.2")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("base: false"));
}

#[test]
fn base_witness_names_the_open_set() {
    let v = json(&["base", "--candidate", "B_bad", "--file", &fixture("FIX-4.2")]);
    assert_eq!(v["is_base"], false);
    assert_eq!(v["witness"]["kind"], "uncovered");
    assert_eq!(v["witness"]["element"]["notation"], "(x,x)");
    assert_eq!(v["witness"]["open"]["name"], "F6");
    assert_eq!(v["covers_by_unions"], true);
    let v = json(&["base", "--candidate", "B_good", "--file", &fixture("FIX-4.2")]);
    assert_eq!(v["is_base"], true);
}

#[test]
fn continuity_criteria_disagree_on_identity() {
    let v = json(&["continuity", "--fn", "i", "--from", "tau2", "--to", "tau1", "--file", &fixture("FIX-5.9")]);
    let verdict = |name: &str| {
        v["criteria"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["criterion"] == name)
            .map(|c| c["holds"].clone())
            .unwrap()
    };
    assert_eq!(verdict("pointwise"), false);
    assert_eq!(verdict("closed_preimage"), true);
    let one = json(&[
        "continuity",
        "--fn",
        "i",
        "--from",
        "tau1",
        "--to",
        "tau1",
        "--criterion",
        "preimage-open",
        "--file",
        &fixture("FIX-5.9"),
    ]);
    assert_eq!(one["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(one["homeomorphism"], true);
}

#[test]
fn derived_set_lists_limiting_elements() {
    let text = stdout(&["derived", "--set", "C", "--file", &fixture("FIX-3.18")]);
    assert!(text.contains("limiting elements: {(x,y), (x,z)}"), "{text}");
}

#[test]
fn mined_witness_is_an_instance_document() {
    let args = ["mine", "--positive", "CS_VALID", "--negative", "SN_VALID", "--n", "3", "--m", "2", "--json"];
    let text = stdout(&args);
    let inst = parse_instance(&text).expect("witness parses");
    assert_eq!(emit_instance(&inst), text);
    assert_eq!(inst.topologies["tau"].len(), 4);
}

#[test]
fn exhausted_search_is_a_verdict() {
    let v = json(&["mine", "--positive", "T1", "--negative", "T2", "--n", "1", "--m", "1"]);
    assert_eq!(v["found"], false);
}

#[test]
fn cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_softtop"))
        .args(["mine", "--positive", "CS_VALID", "--negative", "SN_VALID", "--n", "3", "--m", "2"])
        .env("SOFTTOP_CAP", "10")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap is 10"));
}

#[test]
fn errors_exit_nonzero() {
    let dir = std::env::temp_dir().join(format!("softtop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (r#"{"universe":["x"],"parameters":["a"],"soft_sets":{"PHI":{"a":["x"]}}}"#, "RESERVED_NAME"),
        (r#"{"universe":["x"],"parameters":["a"],"soft_sets":{"F":{"a":["w"]}}}"#, "UNKNOWN_LABEL"),
    ];
    for (i, (text, code)) in cases.iter().enumerate() {
        let path = dir.join(format!("bad{i}.json"));
        std::fs::write(&path, text).unwrap();
        let out = softtop(&["closed", "--file", path.to_str().unwrap()]);
        assert!(!out.status.success());
        assert!(String::from_utf8_lossy(&out.stderr).contains(code));
    }
    let out = softtop(&["closure", "--set", "nope", "--file", &fixture("FIX-3.6")]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    let out = softtop(&["closed"]);
    assert!(!out.status.success());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_passes_and_checks_single_files() {
    let v = json(&["corpus"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["fixtures"].as_array().unwrap().len(), 13);
    let v = json(&["corpus", &fixture("FIX-2.22")]);
    assert_eq!(v["fixtures"][0]["id"], "FIX-2.22");
    assert_eq!(v["passed"], true);
}
