use std::process::Command;

use serde_json::Value;

fn cyclo(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclo")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = cyclo(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}")))
}

#[test]
fn invariants_examples() {
    for (q, m, expected) in [("3", "x^2", (1, 4, 6)), ("5", "x^2", (6, 6, 20)), ("3", "x^3", (10, 10, 18))] {
        let (code, v) = json(&["invariants", "--q", q, "--m", m]);
        assert_eq!(code, 0);
        assert_eq!((v["genus"].as_u64(), v["places"].as_u64(), v["group"].as_u64()),
            (Some(expected.0), Some(expected.1), Some(expected.2)));
    }
}

#[test]
fn exit_zero_for_an_isomorphic_curve() {
    let (code, v) = json(&["characterize", "--q", "5", "--h", "2*(v^5-v)^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "isomorphic");
    assert_eq!((v["witness"]["a"].as_i64(), v["witness"]["b"].as_i64()), (Some(-1), Some(1)));
    assert_eq!(v["witness"]["transcript"]["passed"], true);
}

#[test]
fn trivial_case_for_q_two() {
    let (code, v) = json(&["characterize", "--q", "2", "--h", "v"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "trivial");
}

#[test]
fn exit_one_when_not_isomorphic() {
    let (code, v) = json(&["characterize", "--q", "5", "--h", "v^3*(v-1)^3*(v-2)*(v-3)*(v-4)"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fails_a");
    assert_eq!(v["evidence"]["order_p_elements"], 0);
    // wrong genus
    let (code, v) = json(&["characterize", "--q", "5", "--h", "v^2+2"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fails_b");
}

#[test]
fn the_v_cubed_curve_is_isomorphic_after_v_to_one_over_w() {
    let (code, v) = json(&["characterize", "--q", "5", "--h", "v^3*(v-1)*(v-2)*(v-3)*(v-4)"]);
    assert_eq!(code, 0);
    assert_eq!(v["normalized"]["steps"][0]["step"], "move_to_infinity");
}

#[test]
fn exit_two_for_input_errors() {
    for args in [
        &["characterize", "--q", "5", "--h", "v^2+"][..],
        &["invariants", "--q", "6"],
        &["invariants", "--q", "3", "--m", "x^2+1"],
        &["genus", "--q", "173", "--h", "v"],
        &["genus", "--q", "5", "--h", "v", "--n", "3"],
        &["orbits", "--q", "5", "--lambda", "v"],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"].is_string());
    }
    // clap usage errors share the code
    assert_eq!(cyclo(&["characterize", "--q", "5"]).0, 2);
}

#[test]
fn exit_three_for_budget_errors() {
    let (code, v) = json(&["count", "--q", "13", "--h", "v^13-v", "--k", "9"]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("budget"));
    assert_eq!(json(&["orbits", "--q", "16", "--h", "v^16-v"]).0, 3);
}

#[test]
fn zeta_report_shape() {
    let (code, v) = json(&["zeta", "--q", "3", "--h", "v^3-v"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["q", "g", "counts", "lpoly", "functional_eq", "weil_ok", "elapsed_ms"]);
    assert_eq!(v["lpoly"], serde_json::json!([1, 0, 3]));
}

#[test]
fn other_subcommands_produce_json() {
    for args in [
        &["torsion", "--q", "3"][..],
        &["units", "--q", "5"],
        &["genus", "--q", "7", "--h", "v^7-v"],
        &["count", "--q", "4", "--h", "v^4-v", "--k", "3"],
        &["orbits", "--q", "5", "--lambda", "2"],
        &["normalize", "--q", "5", "--h", "v^3*(v-1)*(v-2)*(v-3)*(v-4)"],
        &["scan-orbits", "--q", "7"],
    ] {
        assert_eq!(json(args).0, 0, "{args:?}");
    }
    let (_, v) = json(&["count", "--q", "4", "--h", "v^4-v", "--k", "3"]);
    assert_eq!(v["rule"], v["enumerated"]);
    let (_, v) = json(&["torsion", "--q", "3"]);
    assert_eq!(v["degree_u"], 9);
    assert_eq!(v["generator"]["matches_expected"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["characterize", "--q", "7", "--h", "3*(v^7-v)^5", "--seed", "7"];
    assert_eq!(cyclo(&args), cyclo(&args));
    let (_, a) = json(&args);
    let (_, b) = json(&["characterize", "--q", "7", "--h", "3*(v^7-v)^5", "--seed", "8"]);
    assert_eq!(a["verdict"], b["verdict"]);
    assert_ne!(a["witness"]["transcript"]["seed"], b["witness"]["transcript"]["seed"]);
}

#[test]
fn witness_file_is_written() {
    let path = std::env::temp_dir().join(format!("cyclo-witness-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(cyclo(&["characterize", "--q", "7", "--h", "v^7-v", "--witness", p]).0, 0);
    let w: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(w["transcript"]["passed"], true);
}

#[test]
fn text_format() {
    let (code, out) = cyclo(&["invariants", "--q", "3", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "genus: 1\nplaces: 4\ngroup: 6\n");
}
