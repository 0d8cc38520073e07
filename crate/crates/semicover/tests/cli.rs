use std::path::PathBuf;
use std::process::{Command, Output};

use semicover::formats;
use semicover_core::cone;
use serde_json::Value;

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semicover")).args(args).env_remove("SEMICOVER_CAP").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn sigma_of_klein_four_is_three() {
    let out = run(&["sigma", "--fixture", "V4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["covering_number"]["sigma_g"], 3);
    assert_eq!(r["covering_number"]["sigma_s"], 3);
    assert_eq!(r["covering_number"]["witness_cover"].as_array().unwrap().len(), 3);
}

#[test]
fn sigma_reads_tables_and_reports_cyclic_groups_as_undefined() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.table");
    std::fs::write(&path, "order: 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let out = run(&["sigma", "--table", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["covering_number"]["group_id"], "c3");
    assert!(r["covering_number"]["sigma_g"].is_null());
    assert_eq!(r["cyclic"], true);
}

#[test]
fn malformed_table_is_an_input_error_naming_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.table");
    std::fs::write(&path, "order: 2\n0 1\n").unwrap();
    let out = run(&["sigma", "--table", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bad.table"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn cap_flag_overrides_the_environment() {
    let base = ["sigma", "--fixture", "C2xC2xC2"];
    let out = Command::new(env!("CARGO_BIN_EXE_semicover")).args(base).env("SEMICOVER_CAP", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["census_cap"], 4);
    assert!(r.get("census").is_none());

    let out = Command::new(env!("CARGO_BIN_EXE_semicover"))
        .args(base)
        .args(["--cap", "8"])
        .env("SEMICOVER_CAP", "4")
        .output()
        .unwrap();
    let r = json(&out);
    assert_eq!(r["census"]["counterexample"], Value::Null);
    assert_eq!(r["two_cover_search"]["covers"], serde_json::json!([]));
}

#[test]
fn bad_cap_variable_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_semicover"))
        .args(["sigma", "--fixture", "V4"])
        .env("SEMICOVER_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SEMICOVER_CAP"));
}

#[test]
fn exhaustive_above_cap_is_rejected() {
    let out = run(&["sigma", "--fixture", "A4", "--exhaustive", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--fixture A4"));
}

#[test]
fn check_cover_failure_replays() {
    let (a, b) = (fixture("cones/zc2_nonneg.cone"), fixture("cones/zc2_nonpos.cone"));
    let out = run(&["check-cover", "--model", "z^1xC2", "--A", &a, "--B", &b, "--radius", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["failure"]["check"], "trivial_intersection");
    // The witness lies in both sides and is not the identity.
    let model = formats::parse_model("z^1xC2").unwrap();
    let w = formats::parse_element(&model, r["failure"]["witness"][0].as_str().unwrap()).unwrap();
    let (ca, cb) = (formats::load_cone(&model, a.as_ref()).unwrap(), formats::load_cone(&model, b.as_ref()).unwrap());
    assert!(!model.is_identity(&w));
    assert!(cone::contains(&model, &ca, &w).unwrap() && cone::contains(&model, &cb, &w).unwrap());

    let out = run(&["check-cover", "--model", "z^1xC2", "--A", &a, "--B", &b, "--radius", "8", "--reduce"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn not_a_cover_reports_the_uncovered_element() {
    let a = fixture("cones/zc2_nonneg.cone");
    let out = run(&["reduce", "--model", "z^1xC2", "--A", &a, "--B", &a]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["error"], "NotACover");
    let model = formats::parse_model("z^1xC2").unwrap();
    let w = formats::parse_element(&model, r["witness"][0].as_str().unwrap()).unwrap();
    let ca = formats::load_cone(&model, a.as_ref()).unwrap();
    assert!(!cone::contains(&model, &ca, &w).unwrap());
}

#[test]
fn heisenberg_witness_descends_one_step() {
    let (a, b) = (fixture("cones/heisenberg_a.cone"), fixture("cones/heisenberg_b.cone"));
    let out = run(&["witness", "--model", "heisenberg", "--A", &a, "--B", &b, "--radius", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["descent"]["steps"], 1);
    assert!(r["witness"]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "verified" && c["radius"] == 4));

    let out = run(&["descend", "--model", "heisenberg", "--A", &a, "--B", &b, "--radius", "4", "--max-depth", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["descent"]["outcome"], "depth_exceeded");
}

#[test]
fn missing_and_malformed_cones_name_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cone");
    std::fs::write(&bad, "{\"op\": \"pullback\"}").unwrap();
    let good = fixture("cones/zc2_nonneg.cone");
    let out = run(&["reduce", "--model", "z^1xC2", "--A", &good, "--B", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("semicover: --B "));

    let out = run(&["reduce", "--model", "z^1xC2", "--A", "missing.cone", "--B", &good]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.cone"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["sigma", "--fixture", "V4", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "finite", "--radius", "0"]).status.code(), Some(2));
    assert_eq!(run(&["check-cover", "--model", "mystery", "--A", "a", "--B", "b"]).status.code(), Some(2));
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("one.json"), dir.path().join("two.json"));
    for p in [&p1, &p2] {
        let out = run(&["analyze", "--presentation", &fixture("presentations/klein_bottle.fp"), "--output", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (one, two) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(one, two);
    let r: Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(r["abelianization"], "ℤ⊕ℤ/2");
    assert_eq!(r["model"], "klein_bottle");
}

#[test]
fn bundled_presentations_resolve_by_name() {
    let out = run(&["analyze", "--presentation", "heisenberg", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["abelianization"], "ℤ^2");
    assert_eq!(r["model"], "heisenberg");
}

#[test]
fn text_output_prefixes_verdicts_with_the_radius() {
    let out = run(&["analyze", "--presentation", "klein_bottle", "--format", "text", "--radius", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("closed_A: at radius 3 verified"), "{text}");
}

#[test]
fn lemma_suite_report_is_reproducible() {
    let a = run(&["verify", "--suite", "lemmas", "--seed", "7", "--radius", "3"]);
    let b = run(&["verify", "--suite", "lemmas", "--seed", "7", "--radius", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["total_failed"], 0);
}

#[test]
fn finite_and_roundtrip_suites_pass() {
    for suite in ["finite", "roundtrip"] {
        let out = run(&["verify", "--suite", suite, "--radius", "3"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn presentations_on_a_mismatched_model_are_rejected() {
    let out = run(&["analyze", "--presentation", "klein_bottle", "--model", "heisenberg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("baBa"));
    let out = run(&["analyze", "--presentation", "klein_bottle", "--model", "z^3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze", "--presentation", "klein_bottle", "--model", "free:2", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["model"], "free:2");
}
