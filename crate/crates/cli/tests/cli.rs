use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqalg"))
        .args(args)
        .arg("--no-timestamp")
        .current_dir(data(""))
        .output()
        .expect("the binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check<'a>(v: &'a Value, id: &str) -> &'a Value {
    v["report"]["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn group_check_accepts_c2_and_rejects_a_bad_table() {
    let out = run(&["group", "check", "c2.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["order"], 2);
    let out = run(&["group", "check", "not-associative.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].as_str().unwrap().contains("associativity"));
}

#[test]
fn tambara_check_marks_norm_of_sum() {
    for file in ["burnside-c2.json", "burnside-c2-tables.json"] {
        let out = run(&["tambara", "check", file]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let v = json(&out);
        let c = check(&v, "tambara.norm_of_sum");
        assert_eq!(c["status"], "pass");
        assert!(c["instances"].as_u64().unwrap() > 0);
        assert!(c["paper_anchor"].is_string());
    }
}

#[test]
fn corrupted_norm_fails_with_a_witness() {
    let out = run(&["tambara", "check", "corrupted-norm-c2.json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let c = check(&v, "tambara.norm_of_sum");
    assert_eq!(c["status"], "fail");
    assert!(c["witness"].as_str().unwrap().contains("N_e^C2"));
}

#[test]
fn localization_exit_codes() {
    let out = run(&["tambara", "localize", "burnside-c2.json", "--element", "[1,0]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["depth"], 1);
    let out = run(&["tambara", "localize", "burnside-c2.json", "--element", "1,0", "--depth", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["tambara", "localize", "burnside-c2.json", "--element", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["verify", "all", "--suite", "c2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let ids: Vec<String> =
        json(&a)["report"]["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap().into()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn square_zero_output_feeds_back_in() {
    let dir = std::env::temp_dir().join(format!("eqalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("ext.json");
    let out = run(&["tambara", "squarezero", "dual-c2-mod2.json", "regular.json", "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = run(&["tambara", "check", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["invariant_factors"]["e"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bispans_compose_and_report_flags() {
    let out = run(&["bispan", "compose", "restrict-to-point.json", "norm-to-point.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["s"]["points"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["t"]["points"].as_array().unwrap().len(), 2);
    let flags = json(&run(&["bispan", "flags", "norm-to-point.json"]))["result"].clone();
    assert_eq!(flags, serde_json::json!({"iso": false, "epi": true, "gr": false}));
    let flags = json(&run(&["bispan", "flags", "restrict-to-point.json"]))["result"].clone();
    assert_eq!(flags, serde_json::json!({"iso": true, "epi": true, "gr": true}));
}

#[test]
fn kahler_and_derivations() {
    let out = run(&["kahler", "sqrt2-c2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["invariant_factors"]["e"], serde_json::json!(["2", "4"]));
    let out = run(&["kahler", "sqrt2-c2.json", "--base", "sqrt2-c2.json"]);
    assert_eq!(json(&out)["result"]["invariant_factors"]["e"], serde_json::json!([]));
    let out = run(&["derivations", "dual-c2-mod2.json", "regular.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["basis"].as_array().unwrap().len(), 2);
    let out = run(&["verify", "square-zero", "dual-c2-mod2.json", "regular.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["maps"], 4);
}

#[test]
fn orbits_of_a_free_set() {
    let out = run(&["gset", "orbits", "swap-c2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["orbits"][0]["stabilizer"], "e");
}

#[test]
fn enumeration_cap_is_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_eqalg"))
        .args(["verify", "square-zero", "dual-c2-mod2.json", "regular.json", "--no-timestamp"])
        .env("EQALG_ENUM_CAP", "2")
        .current_dir(data(""))
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
}
