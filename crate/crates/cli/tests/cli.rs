use std::path::{Path, PathBuf};
use std::process::Command;

use frobex_cli::{BasisReport, CoverReport, DvrReport, MapReport, WildReport};
use frobex::sweep::SweepReport;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs")
}

fn frobex(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_frobex"))
        .args(args)
        .current_dir(specs())
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn with_spec(cmd: &str, json: &str, extra: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, json).unwrap();
    let mut args = vec![cmd, "--spec", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    frobex(&args)
}

/// Parse a JSON report into its type and re-emit it byte for byte.
fn round_trip<T: Serialize + DeserializeOwned>(stdout: &str) -> T {
    let report: T = serde_json::from_str(stdout).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, stdout);
    report
}

#[test]
fn delta_of_the_cofactor_example() {
    let (code, out, _) = frobex(&["delta", "--spec", "psi.json"]);
    assert_eq!((code, out.as_str()), (0, "2*(y)\n"));
    let (_, json, _) = frobex(&["delta", "--spec", "psi.json", "--format", "json"]);
    let r: MapReport = round_trip(&json);
    assert_eq!(r.cofactor, "y^4");
    assert_eq!((r.delta[0].coeff.num, r.delta[0].coeff.den), (2, 1));
}

#[test]
fn extend_cover_on_the_kummer_example() {
    let (code, out, _) = frobex(&["extend-cover", "--spec", "ex21.json"]);
    assert_eq!(code, 0);
    assert!(out.contains("extends: true"));
    assert!(out.contains("ram: 3*(x)"));
    let (_, json, _) = frobex(&["extend-cover", "--spec", "ex21.json", "--format", "json"]);
    let r: CoverReport = round_trip(&json);
    assert!(r.report.consistent && r.report.splitting_out == Some(true));
    // (0, y, 0): delta 2*(y), pulled back 8*(x), extended delta 5*(x)
    let (code, out, _) = with_spec("extend-cover", r#"{"p":3,"n":4,"map":{"images":["0","y","0"]}}"#, &[]);
    assert_eq!(code, 0);
    assert!(out.contains("delta_bar: 5*(x)\n"), "{out}");
}

#[test]
fn does_not_extend_exits_2_with_a_witness() {
    let (code, out, _) = with_spec("extend-cover", r#"{"p":3,"n":4,"map":{"images":["1","1","0"]}}"#, &[]);
    assert_eq!(code, 2);
    assert!(out.contains("witness: x^(1/3) -> 1/x"), "{out}");
    let (code, json, _) = with_spec(
        "extend-dvr",
        r#"{"p":3,"n":4,"e":1,"map":{"images":["1","1","0"]}}"#,
        &["--format", "json"],
    );
    assert_eq!(code, 2);
    let r: DvrReport = round_trip(&json);
    assert!(!r.extends && !r.map_extends && r.consistent);
    assert_eq!(r.witness.unwrap().element, "s^(1/3)");
}

#[test]
fn extend_dvr_lifted_generator() {
    let (code, json, _) = frobex(&["extend-dvr", "--spec", "dvr.json", "--format", "json"]);
    assert_eq!(code, 0);
    let r: DvrReport = round_trip(&json);
    assert!(r.extends && r.consistent);
    assert_eq!(r.pullback, Some(r.ram.clone()));
}

#[test]
fn malformed_input_names_the_json_path() {
    let (code, _, err) = with_spec("extend-cover", r#"{"p":3,"n":"four"}"#, &[]);
    assert_eq!(code, 1);
    assert!(err.contains("`n`"), "{err}");
    let (code, _, err) = with_spec("delta", r#"{"p":3,"images":["0",5,"0"]}"#, &[]);
    assert_eq!(code, 1);
    assert!(err.contains("images"), "{err}");
    let (code, _, err) = with_spec("delta", r#"{"p":3,"images":["0","y+","0"]}"#, &[]);
    assert_eq!(code, 1);
    assert!(err.contains("parse error"), "{err}");
    let (code, _, err) = with_spec("delta", r#"{"p":3,"images":["0","0","0"]}"#, &[]);
    assert_eq!(code, 1);
    assert!(err.contains("zero map"), "{err}");
    let (code, _, _) = frobex(&["delta", "--spec", "missing.json"]);
    assert_eq!(code, 1);
}

#[test]
fn basis_generator_twist_iterate() {
    let (code, json, _) = frobex(&["basis", "--p", "3", "--e", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let r: BasisReport = round_trip(&json);
    assert_eq!(r.basis.len(), 9);
    assert_eq!(r.basis[8].label, "y^(8/9)");
    let (_, json, _) = frobex(&["generator", "--p", "5", "--format", "json"]);
    let r: MapReport = round_trip(&json);
    assert!(r.is_generator && r.delta.is_empty());
    let (_, json, _) = frobex(&["twist", "--spec", "twist.json", "--format", "json"]);
    let r: MapReport = round_trip(&json);
    let psi: MapReport = round_trip(&frobex(&["delta", "--spec", "psi.json", "--format", "json"]).1);
    assert_eq!(r.map, psi.map);
    let (_, out, _) = frobex(&["iterate", "--spec", "iterate.json"]);
    assert!(out.contains("delta: 1/2*(y)"), "{out}");
}

#[test]
fn verify_sweep_counts_and_is_deterministic() {
    let (code, out, _) = frobex(&["verify-sweep", "--p", "3", "--n", "4", "--e", "1", "--pool", "0,1,2,y,y2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("125 maps checked, 0 discrepancies"), "{out}");
    let args = ["verify-sweep", "--e", "2", "--pool", "0,1,y,y2", "--seed", "11", "--samples", "40", "--format", "json"];
    let (code, a, _) = frobex(&args);
    assert_eq!(code, 0);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let (_, b, _) = frobex(&with_jobs);
    assert_eq!(a, b);
    let r: SweepReport = round_trip(&a);
    assert!(!r.exhaustive && r.checked == 40 && r.discrepancies == 0);
}

#[test]
fn wild_demo_reports_both_criteria() {
    let (code, out, _) = frobex(&["wild-demo", "--spec", "wild.json"]);
    assert_eq!(code, 2);
    assert!(out.contains("z^(2/3) -> (1/x)*z^2"), "{out}");
    let (code, json, _) = with_spec("wild-demo", r#"{"images":{"(1,0)":"1"}}"#, &["--format", "json"]);
    assert_eq!(code, 0);
    let r: WildReport = round_trip(&json);
    assert!(r.extends && r.delta_criterion);
    assert_eq!((r.delta_order.num, r.delta_order.den), (1, 1));
    // the only image feeding the misprinted term of row 5
    let (_, out, _) = with_spec("wild-demo", r#"{"images":{"(2,2)":"1"}}"#, &[]);
    assert!(out.contains("x^(1/3)*z^(2/3) -> y/x   [not in S_q]   (table as printed: 0)"), "{out}");
}
