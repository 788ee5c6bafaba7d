use std::path::PathBuf;

use ncg_cli::{run_scenario, run_scenario_text, run_suite, CliError, Format, Options, Report, Status};

fn bundled(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn values(r: &Report) -> Vec<String> {
    r.entries.iter().map(|e| e.value.clone()).collect()
}

fn without_timing(mut r: Report) -> Report {
    for e in &mut r.entries {
        e.millis = 0;
    }
    r
}

#[test]
fn su2_vertical_sector_has_the_expected_ricci_and_scalar_curvature() {
    let r = run_scenario(&bundled("su2_vertical.toy"), Options::default()).unwrap();
    assert!(r.passed());
    let v = values(&r);
    assert!(v.contains(&"ric(e1, e1) = -1/2".to_string()));
    assert!(v.contains(&"r = 3/4".to_string()));
}

#[test]
fn every_bundled_scenario_passes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let r = run_scenario(&path, Options::default()).unwrap();
        assert!(r.passed(), "{}:\n{}", path.display(), r.render(Format::Text));
        seen += 1;
    }
    assert!(seen >= 4);
}

#[test]
fn broken_cayley_table_names_the_group() {
    // row 1 repeats an element, so 1 has no inverse
    let text = r#"
[[group]]
name = "broken"
order = 2
table = [0, 1, 1, 1]
"#;
    match run_scenario_text(text, Options::default()) {
        Err(CliError::Validation { name, .. }) => assert_eq!(name, "broken"),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn empty_scenario_gives_an_empty_passing_report() {
    let r = run_scenario_text("", Options::default()).unwrap();
    assert!(r.entries.is_empty());
    assert!(r.passed());
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(run_suite("topology", 1), Err(CliError::UnknownSuite(n)) if n == "topology"));
}

#[test]
fn parse_errors_carry_a_position() {
    let text = "base_dim = 1\n\n[[task]\nop = \"center\"\n";
    match run_scenario_text(text, Options::default()) {
        Err(CliError::Parse { line, column, .. }) => {
            assert_eq!(line, 3);
            assert!(column >= 1);
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn unknown_operation_is_a_task_error() {
    let text = "[[task]]\nop = \"frobnicate\"\n";
    assert!(matches!(run_scenario_text(text, Options::default()), Err(CliError::Task { index: 0, .. })));
}

#[test]
fn failed_expectation_marks_the_report_failed() {
    let text = "[[lie]]\nname = \"g\"\nbuiltin = \"so3\"\n[[metric]]\nname = \"k\"\nlie = \"g\"\n\
                [[task]]\nop = \"scalar_curvature\"\nmetric = \"k\"\nexpect = \"r = 1\"\n";
    let r = run_scenario_text(text, Options::default()).unwrap();
    assert!(!r.passed());
    assert_eq!(r.entries[0].status, Status::Fail);
}

#[test]
fn suites_are_deterministic_for_a_fixed_seed() {
    for name in ["representation", "sheaf"] {
        let a = without_timing(run_suite(name, 99).unwrap());
        let b = without_timing(run_suite(name, 99).unwrap());
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn parallel_runs_keep_task_order() {
    let opts = Options::default();
    let par = Options { parallel: true, ..opts };
    for name in ["sheaves.toy", "su2_vertical.toy", "fields_and_norms.toy"] {
        let a = without_timing(run_scenario(&bundled(name), opts).unwrap());
        let b = without_timing(run_scenario(&bundled(name), par).unwrap());
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn json_report_has_the_documented_fields() {
    let r = run_scenario(&bundled("fields_and_norms.toy"), Options::default()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
    let entries = json["entries"].as_array().unwrap();
    assert_eq!(entries.len(), r.entries.len());
    for e in entries {
        for key in ["task", "anchor", "status", "value"] {
            assert!(e.get(key).is_some(), "missing {key}");
        }
    }
    let norm = entries.iter().find(|e| e["task"].as_str().unwrap().starts_with("norm")).unwrap();
    assert_eq!(norm["status"], "pass");
    assert_eq!(norm["tolerance"], "1e-12");
}

#[test]
fn geometry_sheaf_and_witness_suites_pass() {
    for name in ["geometry", "sheaf", "appendixB"] {
        let r = run_suite(name, ncg_cli::DEFAULT_SEED).unwrap();
        assert!(r.passed(), "{name}:\n{}", r.render(Format::Text));
        assert!(!r.entries.is_empty());
    }
}

#[test]
fn algebra_and_representation_suites_pass() {
    for name in ["algebra", "representation"] {
        let r = run_suite(name, ncg_cli::DEFAULT_SEED).unwrap();
        assert!(r.passed(), "{name}:\n{}", r.render(Format::Text));
    }
}
