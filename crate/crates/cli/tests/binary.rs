use std::path::PathBuf;
use std::process::Command;

fn ncg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncg")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncg-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn passing_scenario_exits_zero() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/su2_vertical.toy");
    let (code, out, _) = ncg(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("r = 3/4"));
}

#[test]
fn failing_check_exits_one() {
    let path = scratch(
        "fail.toy",
        "[[lie]]\nname = \"g\"\nbuiltin = \"su2\"\n[[metric]]\nname = \"k\"\nlie = \"g\"\n\
         [[task]]\nop = \"scalar_curvature\"\nmetric = \"k\"\nexpect = \"r = 0\"\n",
    );
    let (code, out, _) = ncg(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = ncg(&["suite", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"));

    let (code, _, err) = ncg(&["run", "/definitely/not/here.toy"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));

    let path = scratch("bad.toy", "[[task]\n");
    let (code, _, err) = ncg(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn json_output_parses() {
    let (code, out, _) = ncg(&["suite", "appendixB", "--format", "json", "--seed", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["entries"].as_array().is_some_and(|e| !e.is_empty()));
}
