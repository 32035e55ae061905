use std::process::{Command, Output};

use serde_json::Value;

fn loopcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn four_manifold_k1_factors() {
    let o = loopcalc(&["decompose", "-i", r#"{"type":"four_manifold","k":1}"#, "--emit", "factors"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["factors"]["circles"], 1);
    assert_eq!(v["factors"]["loop_spheres"], serde_json::json!({"5": 1}));
    assert_eq!(v.as_object().unwrap().len(), 1);
}

#[test]
fn excluded_wall_dimension() {
    let o = loopcalc(&["decompose", "-i", r#"{"type":"wall","n":4,"k":3}"#]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_out(&o);
    assert_eq!(v["error"]["kind"], "excluded_case");
    assert!(v["error"]["message"].as_str().unwrap().contains("{2,4,8}"));
}

#[test]
fn k2_series_to_cap_6() {
    let o = loopcalc(&["decompose", "-i", r#"{"type":"four_manifold","k":2}"#, "--emit", "series", "--cap", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["series"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));
}

#[test]
fn ranks_section_is_for_the_base() {
    let o = loopcalc(&["decompose", "-i", r#"{"type":"four_manifold","k":1}"#, "--emit", "ranks"]);
    let v = json_out(&o);
    assert_eq!(v["ranks"]["subject"], "base");
    assert_eq!(v["ranks"]["ranks"], serde_json::json!({"2": 1, "5": 1}));
}

#[test]
fn spec_from_file() {
    let dir = std::env::temp_dir().join(format!("loopcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(&path, r#"{"type":"pd_complex","m":2,"n":5,"J":{"2":1,"3":1}}"#).unwrap();
    let arg = format!("@{}", path.display());
    let o = loopcalc(&["decompose", "-i", &arg, "--emit", "tree", "--format", "text"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("tree: "));
}

#[test]
fn cap_below_two_is_a_usage_error() {
    let o = loopcalc(&["decompose", "-i", r#"{"type":"four_manifold","k":3}"#, "--cap", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["error"]["kind"], "usage");
}

#[test]
fn malformed_and_unknown_input() {
    for input in ["{not json", r#"{"type":"torus"}"#, r#"{"type":"four_manifold","k":1,"extra":0}"#] {
        let o = loopcalc(&["decompose", "-i", input]);
        assert_eq!(o.status.code(), Some(1), "{input}");
        assert_eq!(json_out(&o)["error"]["kind"], "validation", "{input}");
    }
}

#[test]
fn bad_flags_exit_1() {
    assert_eq!(loopcalc(&["decompose"]).status.code(), Some(1));
    assert_eq!(loopcalc(&["decompose", "-i", "{}", "--emit", "bogus"]).status.code(), Some(1));
}

#[test]
fn equivalent_examples() {
    let k3 = r#"{"type":"four_manifold","k":3}"#;
    let k3_form = r#"{"type":"four_manifold","k":3,"intersection_form":[[1,0,0],[0,-1,0],[0,0,1]]}"#;
    let o = loopcalc(&["equivalent", "-i", k3, "-i", k3_form]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), r#"{"equivalent":true}"#);

    let o = loopcalc(&["equivalent", "-i", r#"{"type":"four_manifold","k":0}"#, "-i", r#"{"type":"four_manifold","k":1}"#]);
    assert_eq!(json_out(&o)["equivalent"], false);

    let o = loopcalc(&["equivalent", "-i", k3, "-i", r#"{"type":"wall","n":5,"k":3}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json_out(&o)["error"].is_object());

    assert_eq!(loopcalc(&["equivalent", "-i", k3]).status.code(), Some(1));
}

#[test]
fn conn_sum_reordered_skeleta() {
    let a = r#"{"type":"connected_sum","m":2,"n":6,"punctured_skeleton":{"2":1,"4":1,"3":2}}"#;
    let b = r#"{"type":"connected_sum","m":2,"n":6,"punctured_skeleton":{"3":2,"2":1,"4":1}}"#;
    assert_eq!(json_out(&loopcalc(&["equivalent", "-i", a, "-i", b]))["equivalent"], true);
}

#[test]
fn verify_hm_reports_zero_failures() {
    let o = loopcalc(&["verify", "--suite", "hm", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["failures"], 0);
    let checks = v["checks"].as_array().unwrap();
    let lw = checks.iter().find(|c| c["check"] == "hm.lyndon_vs_witt_exhaustive").unwrap();
    assert!(lw["instances"].as_u64().unwrap() > 100);
    assert_eq!(lw["seed"], 7);
}

#[test]
fn verify_ss_covers_forms_and_p4() {
    let o = loopcalc(&["verify", "--suite", "ss", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(names.contains(&"ss.p4_e_infinity"));
    assert!(names.contains(&"ss.z_form_independence"));
    assert_eq!(v["failures"], 0);
}

#[test]
fn verify_unknown_suite() {
    let o = loopcalc(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["decompose", "-i", r#"{"type":"wall","n":5,"k":4}"#, "--cap", "12"];
    let a = loopcalc(&args);
    let b = loopcalc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = loopcalc(&["verify", "--suite", "series", "--seed", "3"]);
    assert_eq!(v.stdout, loopcalc(&["verify", "--suite", "series", "--seed", "3"]).stdout);
}
