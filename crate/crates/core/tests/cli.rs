use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn lab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_danielewski-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn envelopes(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

struct Scratch(std::path::PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("dnl-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }
    fn file(&self, name: &str, body: &Value) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body.to_string()).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

#[test]
fn standardize_from_stdin() {
    let out = lab(&["standardize"], Some(r#"{"h": 2, "Q": "(1-x)*(y^2-1)"}"#));
    assert_eq!(out.status.code(), Some(0));
    let env = &envelopes(&out)[0];
    assert_eq!(env["schema"], "danielewski-lab/1");
    assert_eq!(env["command"], "standardize");
    assert_eq!(env["result"]["R2"], json!({}));
    assert_eq!(env["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn batch_keeps_input_order_and_worst_exit_code() {
    let dir = Scratch::new("batch");
    let good = dir.file("a.json", &json!({"h": 2, "Q": "y^2-1"}));
    let domain = dir.file("b.json", &json!({"h": 1, "Q": "y^2"}));
    let broken = dir.file("c.json", &json!({"Q": "y"}));
    let out = lab(&["standardize", &good, &domain], None);
    assert_eq!(out.status.code(), Some(2));
    let envs = envelopes(&out);
    assert!(envs[0].get("result").is_some());
    assert_eq!(envs[1]["error"], "MultipleRoot");

    let out = lab(&["standardize", &domain, &broken, &good], None);
    assert_eq!(out.status.code(), Some(1));
    let kinds: Vec<_> = envelopes(&out).iter().map(|e| e.get("error").cloned()).collect();
    assert_eq!(kinds, [Some(json!("MultipleRoot")), Some(json!("MalformedInput")), None]);
}

#[test]
fn field_flag_and_document_override() {
    let input = r#"{"h": 1, "Q": "y^2+1"}"#;
    // no square root of -1 in Q, but 2 and 3 in F_5
    assert_eq!(lab(&["standardize"], Some(input)).status.code(), Some(2));
    let out = lab(&["standardize", "--field", "Fp:5"], Some(input));
    assert_eq!(envelopes(&out)[0]["result"]["sigma"], json!([{"1": 2}, {"1": 3}]));
    let out = lab(&["standardize", "--field", "Fp:5"], Some(r#"{"field": "Q", "h": 1, "Q": "y^2+1"}"#));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn self_test_is_deterministic() {
    let a = lab(&["self-test", "--seed", "11"], None);
    let b = lab(&["self-test", "--seed", "11"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(envelopes(&a)[0]["result"]["passed"], true);
}

#[test]
fn tree_surface_tree_round_trip() {
    let tree = json!({"nodes": [
        {"id": 0}, {"id": 1, "parent": 0, "w": "1"}, {"id": 2, "parent": 0, "w": "-1"},
        {"id": 3, "parent": 1, "w": "0"}, {"id": 4, "parent": 2, "w": "3"}
    ]});
    let out = lab(&["tree-to-surface"], Some(&tree.to_string()));
    let surf = &envelopes(&out)[0]["result"];
    assert_eq!(surf["sigma"], json!([{"1": "-1", "x": "3"}, {"1": "1"}]));
    assert_eq!(surf["atlas"]["cocycle_residual_terms"], 0);
    let out = lab(&["surface-to-tree"], Some(&surf.to_string()));
    let back = &envelopes(&out)[0]["result"];
    assert_eq!(back["nodes"].as_array().unwrap().len(), 5);
}

#[test]
fn comb_and_obstruction_commands() {
    let out = lab(&["comb-verify"], Some(r#"{"h": 2, "P_list": ["t-1", "t+2"]}"#));
    let r = &envelopes(&out)[0]["result"];
    assert_eq!((r["equation_count"].clone(), r["verified"].clone()), (json!(3), json!(true)));

    let pair = json!({"first": {"h": 2, "Q": "y^2-1"}, "second": {"h": 2, "Q": "(1-x)*(y^2-1)"}});
    let out = lab(&["singular-values"], Some(&pair.to_string()));
    let r = &envelopes(&out)[0]["result"];
    assert_eq!(r["first"], json!(["1"]));
    assert_eq!(r["verdict"], "NotAlgebraicallyEquivalent");
}

#[test]
fn malformed_json_and_bad_flags() {
    let out = lab(&["standardize"], Some("{oops"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(envelopes(&out)[0]["error"], "MalformedInput");
    assert_ne!(lab(&["standardize", "--field", "Fp:6"], Some("{}")).status.code(), Some(0));
    assert_ne!(lab(&["no-such-command"], Some("{}")).status.code(), Some(0));
}
