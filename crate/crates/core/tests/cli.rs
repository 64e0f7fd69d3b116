use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn segrekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segrekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn sv_twisted_cubic() {
    let out = segrekit(&["sv", "--seed", "1", "--json", &path("twisted_cubic.ideal")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["v_degrees"], json!([0, 0, 3, 2]));
    assert_eq!(v["mass_check"], json!({"lhs": 8, "rhs": 8, "ok": true}));
    assert_eq!(v["residual_degree"], 0);
    assert_eq!(v["out_trace"], json!([[3, 1], [2, 2], [1, 1], [-1, 0]]));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["segre", "--seed", "3", "--json", "--trials", "3"];
    let mut with_file: Vec<&str> = args.to_vec();
    let p = path("twisted_cubic.ideal");
    with_file.push(&p);
    let a = segrekit(&with_file);
    let b = segrekit(&with_file);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["segre_degrees"], json!([3, -10]));
}

#[test]
fn table_and_json_agree() {
    let p = path("ci22.ideal");
    let table = segrekit(&["sv", &p]);
    let js = json_of(&segrekit(&["sv", "--json", &p]));
    let text = String::from_utf8(table.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("sv degrees")).unwrap();
    let degrees: Vec<u64> = js["v_degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![0, 0, 4, 0]);
    assert!(row.ends_with("0, 0, 4, 0"));
}

#[test]
fn check_gata1_outcomes() {
    let p = path("ci22.ideal");
    let ok = segrekit(&["check-gata1", "--twists", "2,2", &p]);
    assert!(ok.status.success());
    assert!(String::from_utf8(ok.stdout).unwrap().trim_end().ends_with("equal"));
    let bad = segrekit(&["check-gata1", "--twists", "2,3", &p]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("unequal"));
}

#[test]
fn roundtrip_and_mass_check() {
    let p = path("twisted_cubic.ideal");
    let out = segrekit(&["check-roundtrip", "--json", &p]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["recovered"], json!([0, 0, 3, 2]));
    let out = segrekit(&["mass-check", "--json", &p]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!((v["lhs"].clone(), v["rhs"].clone()), (json!(8), json!(8)));
}

#[test]
fn segre_numbers_and_mult() {
    let out = segrekit(&["segre-numbers", "--json", &path("x2xy.ideal")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["e"], json!([1, 2]));
    assert_eq!(v["kappa"], 1);
    assert_eq!(v["zeros_below_kappa_ok"], true);

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "ring x,y\ngens\ny^2 - x^3").unwrap();
    let out = segrekit(&["mult", "--json", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["multiplicity"], 2);
}

#[test]
fn gysin_from_flags() {
    let out = segrekit(&["gysin", "--ambient", "3", "--twists", "2", "--class", "0,1", "--json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["gysin"], json!([0, 0, 2, 0]));
}

#[test]
fn exit_codes() {
    let out = segrekit(&["sv", &path("malformed.ideal")]);
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 3"), "{err}");

    let out = segrekit(&["sv", "--budget", "1", &path("twisted_cubic.ideal")]);
    assert_eq!(out.status.code(), Some(4));

    let out = segrekit(&["sv", "/nonexistent/file.ideal"]);
    assert_eq!(out.status.code(), Some(1));

    let out = segrekit(&["sv", "--field", "fp:15", &path("point.ideal")]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn field_override() {
    let q = segrekit(&["sv", "--json", "--field", "q", &path("twisted_cubic.ideal")]);
    let p = segrekit(&["sv", "--json", "--field", "fp:1000003", &path("twisted_cubic.ideal")]);
    assert!(q.status.success() && p.status.success());
    assert_eq!(json_of(&q)["v_degrees"], json_of(&p)["v_degrees"]);
}
