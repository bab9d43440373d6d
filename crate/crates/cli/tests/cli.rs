use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

use crossed_forge::{emit_report, emit_scenario, parse_scenario, run_scenario, Format, ResolvedCheck, SystemSpec};

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn scenario_files() -> Vec<PathBuf> {
    let mut out: Vec<_> = std::fs::read_dir(scenario_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    out
}

fn run_json(text: &str) -> Value {
    let report = run_scenario(&parse_scenario(text).unwrap());
    serde_json::from_str(&emit_report(&report, Format::Json)).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crossed-forge"))
}

#[test]
fn minimal_scenario_has_one_check() {
    let text = r#"{"system": {"catalog": "truncated_quantum_torus", "p":3, "q":2, "m":3, "k":2}, "checks": [{"kind":"maximal"}]}"#;
    let s = parse_scenario(text).unwrap();
    assert_eq!(s.checks.len(), 1);
    assert!(matches!(s.checks[0], ResolvedCheck::Maximal));
    assert!(matches!(s.definition.system, SystemSpec::Catalog { ref name, .. } if name == "truncated_quantum_torus"));
}

#[test]
fn truncated_torus_maximal_report() {
    let text = r#"{"system": {"catalog": "truncated_quantum_torus", "p":3, "q":2, "m":3, "k":2}, "checks": [{"kind":"maximal"}]}"#;
    let report = run_json(text);
    assert_eq!(report["checks"][0]["status"], "ok");
    assert_eq!(report["checks"][0]["result"], json!({"maximal_commutative": false, "witness": {"degree": 1, "coefficient": "x^2"}}));
}

#[test]
fn rational_torus_q2_is_maximal() {
    let report = run_json(r#"{"system": {"catalog": "rational_quantum_torus", "q": 2}, "checks": [{"kind": "maximal"}]}"#);
    assert_eq!(report["checks"][0]["result"]["maximal_commutative"], true);
    assert_eq!(report["checks"][0]["result"]["witness"], Value::Null);
}

#[test]
fn group_ring_suite_passes_where_applicable() {
    let report = run_json(r#"{"system": {"catalog": "group_ring", "n": 4, "group": "C2"}, "checks": [{"kind": "theorem-suite"}]}"#);
    let entries = report["checks"][0]["result"]["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().any(|e| e["status"] == "PASS"));
    assert!(entries.iter().all(|e| e["status"] == "PASS" || e["status"] == "SKIPPED"), "{entries:?}");
}

#[test]
fn non_unit_alpha_parses_and_fails_verification() {
    let text = r#"{
        "system": {"ring": {"kind": "modular", "n": 4}, "group": "C2", "alpha": [{"s": "1", "t": "1", "value": "2"}]},
        "checks": [{"kind": "verify"}, {"kind": "center"}]
    }"#;
    let report = run_json(text);
    let verify = &report["checks"][0];
    assert_eq!(verify["status"], "ok");
    assert_eq!(verify["result"]["valid"], false);
    let witnesses = verify["result"]["violations"]["alpha-unit"]["witnesses"].as_array().unwrap();
    assert_eq!(witnesses[0], "α(1,1) = 2 is not a unit");
    assert_eq!(report["checks"][1]["status"], "error");
}

#[test]
fn element_literal_resolves_with_its_support() {
    let text = r#"{"system": {"catalog": "truncated_quantum_torus", "p":3, "q":2, "m":3, "k":2},
                   "checks": [{"kind": "ideal", "generators": ["x^2*[1]"]}]}"#;
    let s = parse_scenario(text).unwrap();
    let ResolvedCheck::Ideal(gens) = &s.checks[0] else { panic!() };
    assert_eq!(gens[0].support().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["1"]);
    assert_eq!(gens[0].to_string(), "x^2*[1]");
}

#[test]
fn corpus_round_trips_through_emit() {
    for path in scenario_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let first = parse_scenario(&text).unwrap();
        let emitted = emit_scenario(&first.definition);
        let second = parse_scenario(&emitted).unwrap();
        assert_eq!(first.definition, second.definition, "{}", path.display());
        assert_eq!(emitted, emit_scenario(&second.definition), "{}", path.display());
        let (a, b) = (run_scenario(&first), run_scenario(&second));
        assert_eq!(emit_report(&a, Format::Json), emit_report(&b, Format::Json), "{}", path.display());
    }
}

#[test]
fn every_catalog_entry_round_trips_as_a_scenario() {
    for entry in crossed_core::catalog::standard_entries().unwrap() {
        let mut system = serde_json::Map::new();
        system.insert("catalog".into(), json!(entry.name));
        for (k, v) in &entry.params {
            system.insert(k.clone(), json!(v));
        }
        let text = json!({"system": system, "checks": [{"kind": "verify"}, {"kind": "maximal"}]}).to_string();
        let first = parse_scenario(&text).unwrap_or_else(|e| panic!("{}: {e:#}", entry.label()));
        assert_eq!(first.system.describe(), entry.system.describe());
        let second = parse_scenario(&emit_scenario(&first.definition)).unwrap();
        assert_eq!(first.definition, second.definition, "{}", entry.label());
        assert_eq!(first.entry.as_ref().map(|e| e.label()), Some(entry.label()));
    }
}

#[test]
fn parse_errors() {
    let unknown = parse_scenario(r#"{"system": {"catalog": "no_such_thing"}, "checks": []}"#).unwrap_err();
    assert!(format!("{unknown:#}").contains("no_such_thing"), "{unknown:#}");

    let bad_literal = parse_scenario(
        r#"{"system": {"catalog": "group_ring", "n": 4, "group": "C2"}, "checks": [{"kind": "ideal", "generators": ["y*[0]"]}]}"#,
    );
    assert!(bad_literal.is_err());

    let schema = parse_scenario(r#"{"system": {"catalog": "matrix_twisted"}, "checks": [{"kind": "explode"}]}"#).unwrap_err();
    assert!(format!("{schema:#}").contains("line"), "{schema:#}");

    let extra_key = parse_scenario(r#"{"system": {"catalog": "matrix_twisted"}, "checks": [], "colour": 1}"#);
    assert!(extra_key.is_err());

    let syntax = parse_scenario("{\n  \"system\": {\n    \"catalog\": \"matrix_twisted\"\n  },\n  \"checks\": [,]\n}").unwrap_err();
    assert!(format!("{syntax:#}").contains("line 5"), "{syntax:#}");
}

#[test]
fn guard_violations_are_per_check() {
    // the commutant of the Laurent torus is infinite; the check fails, the next one runs
    let report = run_json(r#"{"system": {"catalog": "rational_quantum_torus", "q": 2}, "checks": [{"kind": "center"}, {"kind": "maximal"}]}"#);
    assert_eq!(report["checks"][1]["status"], "ok");
    assert_eq!(report["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn timings_are_opt_in() {
    let without = run_json(r#"{"system": {"catalog": "matrix_twisted"}, "checks": [{"kind": "verify"}]}"#);
    assert!(without["checks"][0].get("elapsed_ms").is_none());
    let with = run_json(r#"{"system": {"catalog": "matrix_twisted"}, "checks": [{"kind": "verify"}], "output": {"timings": true}}"#);
    assert!(with["checks"][0]["elapsed_ms"].is_u64());
}

#[test]
fn text_format_mentions_every_check() {
    let s = parse_scenario(&std::fs::read_to_string(scenario_dir().join("group_ring_z4_c2.json")).unwrap()).unwrap();
    let text = emit_report(&run_scenario(&s), Format::Text);
    for (i, check) in s.definition.checks.iter().enumerate() {
        assert!(text.contains(&format!("[{i}] {}", check.kind())), "{text}");
    }
}

#[test]
fn binary_exit_codes() {
    let ok = bin().arg("run").arg(scenario_dir().join("inline_bad_alpha.json")).output().unwrap();
    assert!(ok.status.success(), "FAIL verdicts are data, not process failures");
    let missing = bin().args(["run", "/nonexistent/scenario.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let list = bin().args(["catalog", "list"]).output().unwrap();
    assert!(list.status.success());
    assert!(String::from_utf8(list.stdout).unwrap().contains("truncated_quantum_torus"));
}

#[test]
fn verify_subcommand_runs_axioms_only() {
    let out = bin().arg("verify").arg(scenario_dir().join("truncated_torus_f3.json")).output().unwrap();
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["kind"], "verify");
    assert_eq!(checks[0]["result"]["valid"], true);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("crossed-forge-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = bin()
        .arg("run")
        .arg(scenario_dir().join("truncated_torus_maximal.json"))
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success() && out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["checks"][0]["result"]["witness"]["coefficient"], "x^2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic_in_process() {
    for path in scenario_files() {
        let s = parse_scenario(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(emit_report(&run_scenario(&s), Format::Json), emit_report(&run_scenario(&s), Format::Json), "{}", path.display());
    }
}
