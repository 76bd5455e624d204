use std::process::{Command, Output};

fn superder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superder")).args(args).output().expect("binary runs")
}

#[test]
fn report_is_deterministic() {
    let a = superder(&["report", "--seed", "7", "--json"]);
    let b = superder(&["report", "--seed", "7", "--json"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
    assert_eq!(v["pass"], true);
}

#[test]
fn empty_report() {
    let out = superder(&["report", "--max-rank", "0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn algebra_file_roundtrip() {
    let out = superder(&["build", "psq:3", "--json"]);
    assert!(out.status.success());
    let path = std::env::temp_dir().join(format!("superder-psq3-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let again = superder(&["build", path.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&path).ok();
    assert!(again.status.success(), "{}", String::from_utf8_lossy(&again.stderr));
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn classify_verdicts() {
    let status = |spec: &str, sel: &str| {
        let out = superder(&["classify", spec, sel, "--json"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["result"]["classification"]["status"].as_str().unwrap().to_string()
    };
    assert_eq!(status("psq:3", "outer:0"), "not_almost_inner");
    assert_eq!(status("example:even", "euler"), "certified_almost_inner");
    assert_eq!(status("gl:2,1", "euler"), "inner");
    assert_eq!(status("example:odd", "pr2"), "certified_almost_inner");
}

#[test]
fn bad_input_fails() {
    assert_eq!(superder(&["build", "psl:2,3"]).status.code(), Some(2));
    assert_eq!(superder(&["classify", "sl:2,1", "nonsense"]).status.code(), Some(2));
}

#[test]
fn outer_dims() {
    let out = superder(&["outer", "psl:2,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["outer"], serde_json::json!({"even": 3, "odd": 0}));
}
