//! End-to-end runs of the `duflo` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use lie_duflo::EnvElement;

fn duflo(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_duflo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn duflo");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

const OMEGA: &str = r#"{"terms":[{"exps":[0,2,0],"coeff":"1"},{"exps":[1,0,1],"coeff":"4"}]}"#;

#[test]
fn apply_duflo_to_casimir() {
    let out = duflo(&["apply", "--map", "duflo", "--algebra", "sl2"], Some(OMEGA));
    assert_eq!(out.status.code(), Some(0));
    let u = EnvElement::from_json_str(3, &String::from_utf8(out.stdout).unwrap()).unwrap();
    let names: Vec<String> = ["e", "h", "f"].map(String::from).to_vec();
    assert_eq!(u.display(&names), "h^2 + 4*e*f - 2*h + 1");

    let text = duflo(&["--human", "apply", "--map", "duflo", "--algebra", "sl2", "--input", OMEGA], None);
    assert_eq!(String::from_utf8(text.stdout).unwrap().trim(), "h^2 + 4*e*f - 2*h + 1");
}

#[test]
fn broken_jacobi_exits_one() {
    let dir = std::env::temp_dir().join(format!("duflo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(
        &path,
        r#"{"name":"broken","dim":3,"basis":["e","h","f"],"brackets":[[0,1,[[0,"2"]]],[0,2,[[1,"1"]]],[1,2,[[2,"-2"]]]]}"#,
    )
    .unwrap();
    let out = duflo(&["check", "--check-id", "jacobi", "--algebra", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "fail");
    assert!(report.to_string().contains("(e, h, f)"));

    // every other check refuses the algebra as input
    let out = duflo(&["check", "--check-id", "duflo-hom", "--algebra", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(duflo(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(duflo(&["check", "--check-id", "nope", "--algebra", "sl2"], None).status.code(), Some(2));
    assert_eq!(duflo(&["check", "--check-id", "jacobi", "--algebra", "so(5)"], None).status.code(), Some(2));
    assert_eq!(duflo(&["apply", "--map", "duflo", "--algebra", "sl2"], Some("{not json")).status.code(), Some(2));
    assert_eq!(duflo(&["coeffs", "--max-k", "3"], None).status.code(), Some(2));
}

#[test]
fn check_reports_are_byte_identical() {
    let args = ["check", "--check-id", "star-assoc", "--algebra", "aff1", "--max-degree", "2", "--seed", "9"];
    let a = duflo(&args, None);
    let b = duflo(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(report["samples"].as_u64().unwrap() >= 50);
}

#[test]
fn small_subcommands() {
    let out = duflo(&["coeffs", "--max-k", "4"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["2"], "1/48");
    assert_eq!(v["4"], "-1/5760");

    let out = duflo(&["invariants", "--algebra", "sl2", "--degree", "2"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 1);

    let out = duflo(&["coinvariants", "--algebra", "heisenberg3", "--degree", "1", "--input", r#"{"terms":[{"exps":[0,0,1],"coeff":"1"}]}"#], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class_is_zero"], true);

    let out = duflo(&["--human", "trace", "--algebra", "sl2", "--k", "2"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "8*e*f + 8*h^2");

    let e = r#"{"terms":[{"exps":[1,0,0],"coeff":"1"}]}"#;
    let f = r#"{"terms":[{"exps":[0,0,1],"coeff":"1"}]}"#;
    let out = duflo(&["--human", "star", "--flavor", "gutt", "--algebra", "sl2", "--lhs", e, "--rhs", f], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "e*f + 1/2*h");

    let out = duflo(&["catalog", "--list"], None);
    assert!(String::from_utf8(out.stdout).unwrap().contains("heisenberg3"));
    let out = duflo(&["catalog", "--show", "aff1"], None);
    assert!(lie_duflo::StructureConstants::from_json_str(&String::from_utf8(out.stdout).unwrap()).is_ok());
}

#[test]
fn suite_passes_and_writes_out() {
    let path = std::env::temp_dir().join(format!("duflo-suite-{}.json", std::process::id()));
    let out = duflo(&["suite", "--max-degree", "4", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["reports"].as_array().unwrap().len() > 60);
}
