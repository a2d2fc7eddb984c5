use std::process::Command;

use flopcalc_cli::{run, Report, SCHEMA};
use proptest::prelude::*;
use serde_json::Value;

fn flopcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flopcalc")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn call(args: &[&str]) -> flopcalc_cli::Run {
    let mut v = vec!["flopcalc".to_string()];
    v.extend(args.iter().map(|s| s.to_string()));
    run(&v)
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut a = args.to_vec();
    a.push("--json");
    let r = call(&a);
    (r.code, serde_json::from_str(&r.stdout).unwrap())
}

#[test]
fn cohomology_of_o_minus_3_on_y() {
    let (code, out, _) = flopcalc(&["cohomology", "O(-3)", "--space", "Y", "--json"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    let dims = &r.result["dims"];
    assert_eq!(dims["3"], "1");
    for i in ["1", "2", "4", "5"] {
        assert_eq!(dims[i], "0", "H^{i}");
    }
    // sections along the fibers make H^0 infinite
    assert_eq!(dims["0"], "inf");
}

#[test]
fn resolution_of_o_minus_3() {
    let (code, out, _) = flopcalc(&["resolve", "O(-3)", "--against", "S(-2),O(-2),O(-1),O", "--space", "LGr"]);
    assert_eq!(code, 0);
    assert!(out.contains("multiplicities: 1, 4, 11, 5, 1"), "{out}");
    let (_, r) = json(&["resolve", "O(-3)", "--against", "S(-2),O(-2),O(-1),O", "--space", "LGr"]);
    let m: Vec<&str> =
        r.result["terms"].as_array().unwrap().iter().map(|t| t["multiplicity"].as_str().unwrap()).collect();
    assert_eq!(m, ["1", "4", "11", "5", "1"]);
}

#[test]
fn cohomology_of_o_on_lgr() {
    let (code, r) = json(&["cohomology", "O", "--space", "LGr"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["dims"], serde_json::json!({ "0": "1", "1": "0", "2": "0", "3": "0" }));
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(call(&["tilting-check", "O + O(-1) + O(-2) + S(0) @Y"]).code, 0);
    assert_eq!(call(&["tilting-check", "O + O(-1) + O(-2) + S(1) @Y"]).code, 1);
    assert_eq!(call(&["ext", "O(-2)", "Omega1P4 @LGr"]).code, 0);
    assert_eq!(call(&["ext", "O(-2)", "Omega1P4 @LGr", "--oracle", "none"]).code, 2);
    assert_eq!(call(&["exceptional-check", "O, S(1), O(1), O(2) @LGr"]).code, 0);
    assert_eq!(call(&["exceptional-check", "O(2), O @LGr"]).code, 1);
    assert_eq!(call(&["spherical-check", "O", "--space", "Y'"]).code, 0);
    assert_eq!(call(&["iw-chain", "wprime-cycle"]).code, 0);
    assert_eq!(call(&["iw-chain", "t-to-s"]).code, 1);
    assert_eq!(call(&["cyclic", "4"]).code, 0);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["cohomology", "O(", "--space", "LGr"],
        vec!["cohomology", "O", "--space", "Mars"],
        vec!["cohomology", "O"],
        vec!["cohomology", "T", "--space", "LGr"],
        vec!["frobnicate"],
        vec!["mutate", "O, O(1) @P3_GL"],
        vec!["cyclic", "1"],
        vec!["cyclic", "3", "--twist", "9", "--label", "L^0"],
        vec!["ext", "O @LGr", "O @Y"],
        vec!["cohomology", "O", "--cutoff", "many", "--space", "Y"],
    ] {
        let r = call(&args);
        assert_eq!(r.code, 64, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    let r = call(&["cohomology", "O(", "--space", "LGr"]);
    assert!(r.stderr.contains("position 2"), "{}", r.stderr);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(call(&["--help"]).code, 0);
    assert_eq!(call(&["--version"]).code, 0);
}

#[test]
fn mutation_reports_the_new_collection() {
    let (code, r) = json(&["mutate", "O, S(1), O(1), O(2) @LGr", "--left", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["identity"]["holds"], true);
    assert_eq!(r.result["identity"]["euler"], "4");
    let (code, _) = json(&["mutate", "O, S(1), O(1), O(2) @LGr", "--right", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn cyclic_twist_moves_one_label() {
    let (code, r) = json(&["cyclic", "3", "--twist", "1", "--label", "L^-2"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["output"], "L^1");
}

#[test]
fn repro_is_deterministic_and_exits_nonzero_on_failures() {
    let a = call(&["repro"]);
    let b = call(&["repro"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 1);
    assert!(a.stdout.starts_with("# Reproduction report"));
    assert!(a.stdout.contains("| 4 | tilting bundles on Y and Y' | Fail |"));
    let none = call(&["repro", "--oracle", "none"]);
    let line = none
        .stdout
        .lines()
        .find(|l| l.starts_with("| Ext(O(-2), Omega_P4|LGr)") || l.contains("EulerOnly(11)"))
        .unwrap();
    assert!(line.contains("EulerOnly(11)") && line.contains("Inconclusive"), "{line}");
}

fn schema_required() -> Vec<String> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(schema["$id"], SCHEMA);
    schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
}

fn check_dims(v: &Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if k == "dims" || k == "dim" || k == "euler" {
                    match x {
                        Value::String(s) => {
                            assert!(s == "inf" || s.parse::<u128>().is_ok() || s.parse::<i128>().is_ok(), "{s}")
                        }
                        Value::Object(d) => {
                            for s in d.values() {
                                assert!(s.as_str().is_some_and(|s| s == "inf" || s.parse::<u128>().is_ok()), "{s}");
                            }
                        }
                        Value::Null => {}
                        other => panic!("{k} = {other}"),
                    }
                } else {
                    check_dims(x);
                }
            }
        }
        Value::Array(a) => a.iter().for_each(check_dims),
        _ => {}
    }
}

#[test]
fn reports_follow_the_schema_and_round_trip() {
    let required = schema_required();
    for args in [
        vec!["cohomology", "Sym^2 S(1) @LGr"],
        vec!["cohomology", "S(-2) @Y"],
        vec!["ext", "O", "S(-2) @Y"],
        vec!["tilting-check", "O + O(1) + O(2) + S(1) @Y"],
        vec!["spherical-check", "S @Y"],
        vec!["iw-chain", "{M0, S1, M1, M2} W4 => {M0, M1, M2, S2}"],
        vec!["cohomology", "O("],
    ] {
        let mut a = args.clone();
        a.push("--json");
        let r = call(&a);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        let keys: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
        let mut want = required.clone();
        want.sort();
        assert_eq!(keys, want, "{args:?}");
        check_dims(&v["result"]);
        let report: Report = serde_json::from_value(v).unwrap();
        assert_eq!(report.to_json(), r.stdout, "{args:?}");
        assert_eq!(report.outcome.exit_code(), r.code);
        assert_eq!(call(&a), r, "{args:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn malformed_expressions_are_usage_errors(junk in "[A-Za-z(),+*^@;\\[\\]0-9-]{0,12}") {
        let r = call(&["cohomology", &format!("{junk}("), "--space", "LGr"]);
        prop_assert_eq!(r.code, 64, "{}", r.stderr);
    }

    #[test]
    fn exit_codes_stay_in_the_contract(junk in "[A-Za-z(),+*^@ 0-9-]{0,16}", cmd in 0usize..4) {
        let name = ["cohomology", "tilting-check", "exceptional-check", "iw-chain"][cmd];
        let r = call(&[name, &junk, "--space", "Y"]);
        prop_assert!([0, 1, 2, 64].contains(&r.code), "{} {junk:?} -> {}", name, r.code);
    }
}
