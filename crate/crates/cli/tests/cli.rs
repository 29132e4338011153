use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbing")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn pinned_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("plumbing-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn sw_of_the_integral_homology_sphere() {
    let out = run(&["sw", &data("gamma_ex.txt"), "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["sw_norm"], "13/1");
    assert_eq!(classes[0]["oracle"]["difference"], serde_json::json!(["0/1", "0/1"]));
    assert_eq!(v["manifest"]["subcommand"], "sw");
    assert_eq!(v["manifest"]["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn info_reports_the_discriminant_group() {
    let out = run(&["info", &data("gamma_h9.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 9);
    assert_eq!(v["invariant_factors"], serde_json::json!([3, 3]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("|H| = 9"));
}

#[test]
fn domain_errors_exit_with_one() {
    let out = run(&["validate", &data("cycle.txt")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a tree"));
    let indefinite = pinned_file("indef.txt", "vertex a -1\nvertex b -1\nedge a b\n");
    assert_eq!(run(&["validate", &indefinite]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["validate"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["sw", &data("gamma_h9.txt"), "--class", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["sw", &data("gamma_ex.txt"), "--generators", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["semigroup"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["holes", &data("gamma_ex.txt")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn nontrivial_class_with_pinned_lift_and_generators() {
    let gens = pinned_file("h9gens.txt", "21,6,6\n12,6,6\n6,3,9\n");
    let lift = "pinned:0,0,1,0,0,0,0,0,1,0";
    let out = run(&["polypart", &data("gamma_h9.txt"), "--lift", lift, "--generators", &format!("pinned:{gens}")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sw_norm"], "4/1");
    assert_eq!(v["p_h"].as_array().unwrap().len(), 4);
    assert_eq!(v["manifest"]["class"]["c_a"], serde_json::json!(["18/1", "6/1", "10/1"]));
    assert_eq!(v["manifest"]["generators"]["vectors"], serde_json::json!([[21, 6, 6], [12, 6, 6], [6, 3, 9]]));

    // the canonical lift of the same class gives the same invariant
    let out = run(&["sw", &data("gamma_h9.txt"), "--class", "0,0,1,0,0,0,0,0,1,0"]);
    let v = json(&out);
    assert_eq!(v["classes"][0]["sw_norm"], "4/1");
}

#[test]
fn series_and_rational_forms_agree_with_oracles() {
    let out = run(&["series", &data("gamma_h9.txt"), "--class", "0,0,1,0,0,0,0,0,1,0", "--degree", "30", "--oracle"]);
    assert_eq!(json(&out)["oracle"]["agrees"], true);
    let out = run(&["rational", &data("gamma_ex.txt"), "--degree", "60", "--oracle"]);
    assert_eq!(json(&out)["oracle"]["agrees"], true);
}

#[test]
fn semigroups() {
    let v = json(&run(&["semigroup", "--seifert", "2,3,5"]));
    assert_eq!(v["semigroup"]["generators"], serde_json::json!([6, 10, 15]));
    let v = json(&run(&["semigroup", "--pair", "2,3"]));
    assert_eq!(v["delta"], 1);
    assert_eq!(v["alexander"], serde_json::json!([1, -1, 1]));
    let v = json(&run(&["semigroup", "--curve", &data("curve_4_6_15.txt")]));
    assert_eq!(v["semigroup"]["generators"], serde_json::json!([4, 6, 15]));
    assert_eq!(v["delta"], 9);
}

#[test]
fn text_format() {
    let out = run(&["info", &data("gamma_ex.txt"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("order: 1"));
}
