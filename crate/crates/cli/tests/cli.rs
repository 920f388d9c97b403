use std::path::Path;
use std::process::{Command, Output};

use multifan::format::{FanFile, FormFile};
use multifan_core::fixtures;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multifan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fan_file_round_trips() {
    for f in [fixtures::cp2(), fixtures::star(), fixtures::torus()] {
        let file = FanFile::from_fan(&f);
        let text = serde_json::to_string(&file).unwrap();
        let back: FanFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_fan().unwrap(), f);
    }
}

#[test]
fn show_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let fan = json(&run(&["show", "--fixture", "star"]));
    assert_eq!(fan["format"], "multifan/1");
    let path = write(dir.path(), "star.json", &fan);
    let v = json(&run(&["validate", "--fan", &path]));
    assert_eq!(v["complete"], true);
    assert_eq!(v["facets"], 5);
}

#[test]
fn volume_reports_both_routes() {
    let v = json(&run(&["volume", "--fixture", "cp2"]));
    assert_eq!(v["routes_agree"], true);
    assert_eq!(
        v["index"]["text"],
        "1/2*c1^2 + c1*c2 + c1*c3 + 1/2*c2^2 + c2*c3 + 1/2*c3^2"
    );
}

#[test]
fn polynomial_round_trip_through_recognize() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(&["volume", "--fixture", "square", "--route", "index"]));
    let form: FormFile = serde_json::from_value(v["polynomial"]["form"].clone()).unwrap();
    let path = write(dir.path(), "v.json", &serde_json::to_value(&form).unwrap());
    let r = json(&run(&["recognize", "--poly", &path, "--reconstruct"]));
    assert_eq!(r["is_volume_polynomial"], true);
    let witness = write(dir.path(), "w.json", &r["witness"]);
    let again = json(&run(&["volume", "--fan", &witness, "--route", "index"]));
    let f2: FormFile = serde_json::from_value(again["polynomial"]["form"].clone()).unwrap();
    assert_eq!(f2.to_form().unwrap(), form.to_form().unwrap());
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        vec!["plot-dh", "--fixture", "star"],
        vec!["recognize", "--poly"],
        vec!["volume", "--fixture", "torus"],
    ] {
        let args: Vec<String> = if args[0] == "recognize" {
            let dir = std::env::temp_dir().join("multifan-cli-det");
            std::fs::create_dir_all(&dir).unwrap();
            let v = json(&run(&["volume", "--fixture", "star", "--route", "index"]));
            let p = write(&dir, "star-v.json", &v["polynomial"]["form"]);
            vec![
                "recognize".into(),
                "--poly".into(),
                p,
                "--reconstruct".into(),
            ]
        } else {
            args.iter().map(|s| s.to_string()).collect()
        };
        let a = bin().arg("--seed").arg("5").args(&args).output().unwrap();
        let b = bin().arg("--seed").arg("5").args(&args).output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn svg_has_lines_and_labels() {
    let out = run(&["plot-dh", "--fixture", "star"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<line").count(), 5);
    assert!(svg.contains(">2</text>"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("o.json");
    let out = run(&["--out", p.to_str().unwrap(), "dims", "--fixture", "cp2"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(v["dm"], serde_json::json!([1, 1, 1]));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = serde_json::json!({
        "format": "multifan/1", "n": 2, "m": 3,
        "lambda": [["1", "0"], ["2", "0"], ["0", "1"]],
        "weights": [{ "simplex": [1, 2], "w": "1" }]
    });
    let path = write(dir.path(), "bad.json", &bad);
    let out = run(&["validate", "--fan", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "star_condition");
    assert_eq!(err["error"]["offending"], serde_json::json!([[1, 2]]));

    let out = run(&["validate", "--fixture", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let open = serde_json::json!({
        "format": "multifan/1", "n": 2, "m": 2,
        "lambda": [["1", "0"], ["0", "1"]],
        "weights": [{ "simplex": [1, 2], "w": "1" }]
    });
    let path = write(dir.path(), "open.json", &open);
    let out = run(&["volume", "--fan", &path]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "incomplete");

    let out = run(&["dh", "--fixture", "square", "--point", "1,0"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "on_hyperplane");

    let out = run(&["plot-dh", "--fixture", "octahedron"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flip_and_connected_sum_report_dims() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&run(&[
        "flip",
        "--fixture",
        "square",
        "--stellar",
        "1,2",
        "--vector",
        "1,1",
    ]));
    assert_eq!(r["type"], serde_json::json!([1, 2]));
    assert_eq!(r["agrees"], true);
    let cp2 = json(&run(&["show", "--fixture", "cp2"]));
    let path = write(dir.path(), "cp2.json", &cp2);
    let s = json(&run(&[
        "consum",
        "--fixture",
        "cp2",
        "--other",
        &path,
        "--along",
        "1,2",
    ]));
    assert_eq!(s["dm"], serde_json::json!([1, 2, 1]));
    assert_eq!(s["agrees"], true);
}

#[test]
fn from_algebra_realizes_cp2() {
    let dir = tempfile::tempdir().unwrap();
    // functional on degree-2 monomials in one variable: x^2 -> 1
    let f = serde_json::json!({
        "format": "multifan/1", "n": 2, "p": 1,
        "values": [{ "exp": [2], "value": "1" }]
    });
    let path = write(dir.path(), "f.json", &f);
    let r = json(&run(&["from-algebra", "--functional", &path]));
    assert_eq!(r["isomorphic_dims"], true);
    assert_eq!(r["fan_dm"], serde_json::json!([1, 1, 1]));
}
