use std::process::{Command, Output};

use serde_json::Value;

const CODE42: &str = r#"{"q":2,"l":21,"a":[0,3,6,12],"b":[0,7]}"#;
const CODE56: &str = r#"{"q":2,"l":28,"a":[0,1,2,4],"b":[0,19]}"#;
const EMPTY: &str = r#"{"q":2,"l":21,"a":[0,1,2,4],"b":[0,7,14]}"#;

fn gbtk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbtk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = gbtk(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

/// Re-runs the embedded invocation and compares output byte for byte.
fn assert_replays(args: &[&str]) {
    let mut a = args.to_vec();
    a.push("--json");
    let first = stdout(&gbtk(&a));
    let v: Value = serde_json::from_str(&first).unwrap();
    let inv: Vec<String> = v["invocation"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(inv[0], "gbtk");
    let again = Command::new(env!("CARGO_BIN_EXE_gbtk")).args(&inv[1..]).output().unwrap();
    assert_eq!(stdout(&again), first);
}

#[test]
fn params_outputs() {
    assert!(stdout(&gbtk(&["params", CODE42])).starts_with("[[42,8]] h=deg-4"));
    assert_eq!(stdout(&gbtk(&["params", EMPTY])).trim(), "[[42,0]] (empty)");
    let v = json(&["params", r#"{"q":2,"l":2,"a":[0,1],"b":[0,1]}"#]);
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(4), Some(2)));
}

#[test]
fn params_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code42.json");
    std::fs::write(&path, CODE42).unwrap();
    let v = json(&["params", path.to_str().unwrap()]);
    assert_eq!(v["k"], 8);
}

#[test]
fn malformed_spec_exits_2_with_location() {
    let o = gbtk(&["params", r#"{"q":2,"l":21,"a":[0,3],"x":1}"#]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1") && err.contains("`x`"), "{err}");
    assert_eq!(gbtk(&["params", r#"{"q":4,"l":3,"a":[0],"b":[0]}"#]).status.code(), Some(2));
    assert_eq!(gbtk(&["params"]).status.code(), Some(2));
}

#[test]
fn distances() {
    let v = json(&["distance", CODE42, "--exact"]);
    assert_eq!((v["d"].as_u64(), v["exact"].as_bool()), (Some(3), Some(true)));
    let v = json(&["distance", CODE56, "--trials", "10000", "--seed", "1"]);
    assert_eq!((v["d"].as_u64(), v["exact"].as_bool()), (Some(8), Some(false)));
    let v = json(&["distance", EMPTY, "--exact"]);
    assert_eq!(v["d"], "inf");
}

#[test]
fn budget_refusal_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_gbtk"))
        .args(["distance", CODE42, "--exact"])
        .env("GBTK_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("estimator"));
}

#[test]
fn maps_and_embedding() {
    let v = json(&["map", "--qhp-to-gb", "--h1", "1+x+x^2+x^4", "--n1", "7", "--h2", "1+x", "--n2", "3"]);
    assert_eq!(v["gb"], serde_json::from_str::<Value>(CODE42).unwrap());
    assert_eq!(v["qhp"]["k"], 8);
    let v = json(&["map", "--gb-to-rqhp", CODE56, "--n1", "9"]);
    assert_eq!((v["h1"].as_str(), v["h2"].as_str()), (Some("1+x+x^2+x^4"), Some("1+x^27")));
    let o = gbtk(&["map", "--qhp-to-gb", "--h1", "1+x", "--n1", "4", "--h2", "1+x", "--n2", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&["embed", CODE42]);
    assert_eq!(v["a"]["dims"], serde_json::json!([3, 2, 2, 2]));
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("e.svg");
    gbtk(&["embed", CODE42, "--svg", svg.to_str().unwrap()]);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn bound_and_enumerate() {
    let v = json(&["bound", CODE42, "--exact"]);
    assert_eq!(v["d"], 3);
    assert_eq!(v["d_g"]["status"], "pass");
    assert_eq!(v["d_classical"]["status"], "pass");
    let v = json(&["bound", EMPTY]);
    assert_eq!(v["d_g"]["status"], "not-applicable");
    let v = json(&["enumerate", "--ell", "5", "--weight", "2"]);
    assert_eq!(v["exponents"], serde_json::json!([[0, 1], [0, 2]]));
}

#[test]
fn gv_verify_prints_witness() {
    let v = json(&["gv-verify", "--ell", "11"]);
    assert!(v["f"].is_array());
    assert!(v["d"].as_u64().unwrap() >= 3);
    assert!(stdout(&gbtk(&["gv-verify", "--ell", "11"])).contains("f="));
}

#[test]
fn search_csv_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(&job, r#"{"weights":[4,6],"ells":[5,7,9,11],"seed":7,"batch":4}"#).unwrap();
    let mut outs = Vec::new();
    for jobs in ["1", "2", "3"] {
        let out = dir.path().join(format!("r{jobs}.csv"));
        let o = gbtk(&["search", job.to_str().unwrap(), "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        outs.push(std::fs::read(out).unwrap());
    }
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
    let csv = String::from_utf8(outs[0].clone()).unwrap();
    assert!(csv.starts_with("ell,n,w,a_exponents,k,d,exact,seed,trials,ms\n"));
}

#[test]
fn outputs_replay() {
    assert_replays(&["params", CODE42]);
    assert_replays(&["distance", CODE56, "--trials", "200", "--seed", "5"]);
    assert_replays(&["distance", CODE42, "--exact"]);
    assert_replays(&["map", "--qhp-to-gb", "--h1", "1+x+x^2+x^4", "--n1", "7", "--h2", "1+x", "--n2", "3"]);
    assert_replays(&["embed", CODE42, "--prime-reduce"]);
    assert_replays(&["gv-verify", "--ell", "5"]);
    assert_replays(&["enumerate", "--ell", "9", "--weight", "4"]);
    assert_replays(&["search", r#"{"weights":[4],"ells":[5,6]}"#]);
}
