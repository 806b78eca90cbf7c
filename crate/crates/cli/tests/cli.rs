use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_dualskel");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn without_timing(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timing");
    serde_json::to_string(&v).unwrap()
}

/// One invocation per subcommand.
const INVOCATIONS: &[&[&str]] = &[
    &["center", "SL(5)"],
    &["dual", "--group", "SO(8)"],
    &["gtau-verify", "SL(4)", "--all-embeddings"],
    &["components", "Spin(8)", "--all-embeddings"],
    &["weyl-invariants", "--group", "PGL(2)"],
    &["j-sections", "--group", "PGL(2)", "--ramified", "all"],
    &["lagrangians", "--algebra", "A1", "--genus", "2"],
    &["annihilator", "--algebra", "A3", "--genus", "1", "--gamma", "2,0"],
    &["self-dual", "--algebra", "A1", "--genus", "1", "--gamma", "1,0"],
    &["dualize", "--algebra", "B2", "--genus", "1", "--gamma", "1,1"],
    &["heisenberg", "maslov", "--coefficient", "Z/2", "--genus", "1", "--l1", "1,0", "--l2", "0,1", "--l3", "1,1"],
    &["fm-map", "--dims", "-1,1,1", "--algebra", "A2"],
    &["regressions"],
];

/// Determinant by fraction-free elimination, for the center order of a Cartan matrix.
fn det(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[test]
fn center_of_sl5_is_z5() {
    let (code, v) = json(&["center", "SL(5)"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["center"], "Z/5");
    assert_eq!(v["outputs"]["order"], 5);
}

#[test]
fn center_of_e8_is_trivial() {
    let e8 = dualskel::rootdata::SimpleType::new(dualskel::rootdata::Family::E, 8).unwrap();
    assert_eq!(det(e8.cartan_matrix()), 1);
    let (code, v) = json(&["center", "E8_sc"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["center"], "trivial");
    assert_eq!(v["outputs"]["order"], 1);
}

#[test]
fn center_orders_match_cartan_determinants() {
    for (name, label) in [("SL(4)", "A3"), ("Spin(7)", "B3"), ("Sp(6)", "C3"), ("E6_sc", "E6"), ("E7_sc", "E7")] {
        let t: dualskel::rootdata::SimpleType = label.parse().unwrap();
        let (_, v) = json(&["center", name]);
        assert_eq!(v["outputs"]["order"].as_i64().unwrap(), det(t.cartan_matrix()), "{name}");
    }
}

#[test]
fn regressions_pass() {
    let (code, v) = json(&["regressions"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn corrupted_pairing_fails_verification() {
    let (code, v) = json(&["regressions", "--corrupt-pairing"]);
    assert_eq!(code, 1);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["center", "SL(1)"][..],
        &["center", "H4"],
        &["lagrangians", "--algebra", "A1"],
        &["dualize", "--algebra", "A1", "--genus", "1", "--gamma", "1,0,0"],
        &["lagrangians", "--algebra", "D2", "--genus", "2", "--cap", "100"],
        &["j-sections", "SL(2)", "--ramified", "orbit:9"],
        &["nonsense"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    for args in INVOCATIONS {
        let (_, a) = json(args);
        let (_, b) = json(args);
        assert_eq!(without_timing(a), without_timing(b), "{args:?}");
    }
}

#[test]
fn reports_validate_against_schema() {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for args in INVOCATIONS {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        seen.insert(v["command"].as_str().unwrap().to_string());
    }
    assert_eq!(seen.len(), 13);
}

#[test]
fn reports_round_trip() {
    let (_, v) = json(&["dualize", "--algebra", "A3", "--genus", "1", "--gamma", "2,0"]);
    let text = serde_json::to_string(&v).unwrap();
    let back: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
    assert_eq!(v["outputs"]["dual"]["gamma_order"], 8);
}

#[test]
fn seed_changes_only_the_sample() {
    let (_, a) = json(&["regressions", "--seed", "1"]);
    let (_, b) = json(&["regressions", "--seed", "2"]);
    assert_eq!(a["checks"].as_array().unwrap().len(), b["checks"].as_array().unwrap().len());
    assert_ne!(a["outputs"]["sampled_subgroups"], b["outputs"]["sampled_subgroups"]);
    assert_eq!(a["inputs"]["seed"], 1);
}

#[test]
fn lagrangian_counts_for_z2() {
    for (g, n) in [("1", 3), ("2", 15)] {
        let (_, v) = json(&["lagrangians", "--algebra", "A1", "--genus", g, "--count-only"]);
        assert_eq!(v["outputs"]["count"], n);
        assert!(v["outputs"].get("lagrangians").is_none());
    }
}

#[test]
fn text_format_lists_checks() {
    let out = run(&["dualize", "--algebra", "B2", "--genus", "1", "--gamma", "1,1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("dualize\n"));
    assert!(text.contains("PASS algebra_is_langlands_dual"));
}

#[test]
fn heisenberg_absolve_reports_both_normalizations() {
    let (_, a) = json(&["heisenberg", "absolve", "--coefficient", "Z/3", "--genus", "1", "--lagrangian", "1,0"]);
    let (_, b) = json(&["heisenberg", "absolve", "--coefficient", "Z/3", "--genus", "1", "--lagrangian", "0,1"]);
    assert!((a["outputs"]["partition_function"][0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((b["outputs"]["partition_function"][0].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((b["outputs"]["unit_coefficient"][0].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-9);
}
