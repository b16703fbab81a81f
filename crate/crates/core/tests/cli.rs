use std::process::{Command, Output};

use serde_json::Value;

fn jacsyz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacsyz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CUSP: &str = "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)";

#[test]
fn analyze_json_has_stable_schema() {
    let o = jacsyz(&["analyze", "--poly", CUSP, "--vars", "x,y,z", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    // Top-level keys, in emitted order, from the two-space indented lines.
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim_start().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(keys, ["input", "milnor", "syzygy", "saturation", "checks", "theorem", "ci", "warnings"]);
    for (section, fields) in [
        ("input", &["poly", "vars", "n", "d", "field"][..]),
        ("milnor", &["T", "tau", "st", "ct", "dims", "smooth_dims"][..]),
        ("syzygy", &["mdr", "ar", "kr", "er"][..]),
        ("saturation", &["sat", "a_invariant", "regularity", "hatJ_dims", "sd_dims", "defects"][..]),
    ] {
        for f in fields {
            assert!(v[section].get(f).is_some(), "missing {section}.{f}");
        }
    }
    assert_eq!(v["milnor"]["tau"], 6);
    assert_eq!(v["theorem"].as_array().unwrap().len(), 4);
    for c in v["checks"].as_array().unwrap() {
        for f in ["name", "lhs", "rhs", "pass"] {
            assert!(c.get(f).is_some());
        }
    }
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = jacsyz(&["analyze", "--poly", "x*(x^3+y^3+z^3)", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn csv_has_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = jacsyz(&["analyze", "--poly", "x*y*z", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("k,milnor,smooth,ar,kr,er,hatJ,sd,defect"));
    assert!(stdout(&o).contains("tau=3"));
}

#[test]
fn exit_codes() {
    assert_eq!(jacsyz(&["analyze", "--poly", "x^2*y^2"]).status.code(), Some(3));
    assert_eq!(jacsyz(&["analyze", "--poly", "x^2 + y"]).status.code(), Some(1));
    assert_eq!(jacsyz(&["analyze", "--poly", "x y"]).status.code(), Some(1));
    assert_eq!(jacsyz(&["analyze", "--poly", "x*y*z", "--field", "mod:12"]).status.code(), Some(1));
    assert_eq!(jacsyz(&["bogus"]).status.code(), Some(1));
    assert_eq!(jacsyz(&["analyze", "--poly", "x^4+y^4+z^4"]).status.code(), Some(0));
}

#[test]
fn non_isolated_still_reports() {
    let o = jacsyz(&["analyze", "--poly", "x^2*y^2", "--json", "-"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert!(!v["milnor"]["dims"].as_array().unwrap().is_empty());
}

#[test]
fn corpus_filter_runs_two_quartics() {
    let o = jacsyz(&["corpus", "--filter", "quartic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with("PASS")).count(), 2);
}

#[test]
fn modular_corpus_matches_exact_dimensions() {
    let o = jacsyz(&["corpus", "--field", "mod:1000003"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for poly in [CUSP, "x^2*y^3 + z^5", "z*y^2 - x^3 - x^2*z"] {
        let exact: Value = serde_json::from_str(&stdout(&jacsyz(&["analyze", "--poly", poly, "--json", "-"]))).unwrap();
        let modular: Value =
            serde_json::from_str(&stdout(&jacsyz(&["analyze", "--poly", poly, "--field", "mod:1000003", "--json", "-"]))).unwrap();
        for ptr in ["/milnor/dims", "/syzygy/er", "/saturation/hatJ_dims", "/saturation/sd_dims"] {
            assert_eq!(exact.pointer(ptr), modular.pointer(ptr), "{poly} {ptr}");
        }
        assert_eq!(modular["input"]["verified"], false);
    }
}
