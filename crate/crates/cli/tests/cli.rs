use std::io::Write;
use std::process::{Command, Output, Stdio};

fn example(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn nakayama(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nakayama")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nakayama"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn ore_on_the_polynomial_plane() {
    let o = nakayama(&["ore", "--input", &example("poly2.json"), "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["mu_b"][2], serde_json::json!(["2", "0", "1"]));
    assert_eq!(v["divergence"]["divergence"], serde_json::json!([{"coefficient": "2", "word": ["x1"]}]));
    assert_eq!(v["calabi_yau"], false);
    assert_eq!(v["koszul_bound"], 5);
    let text = stdout(&nakayama(&["ore", "--input", &example("poly2.json")]));
    assert!(text.contains("∇_σ·δ: 2·x1\n"));
}

#[test]
fn catalog_quantum_plane_is_calabi_yau() {
    let o = nakayama(&[
        "catalog", "--family", "quantum-plane", "--q", "2", "--case", "qneq-1-a", "--param", "g11=1", "--param", "g23=1",
        "--param", "g13=0", "--param", "g21=0", "--format", "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["calabi_yau"], true);
    assert_eq!(v["catalog"]["matches"], true);
    assert_eq!(v["catalog"]["classifier_calabi_yau"], true);
}

#[test]
fn catalog_polynomial_and_negative_q() {
    let o = nakayama(&["catalog", "--family", "poly", "--n", "3", "--param", "k2_23=-1/2", "--param", "k3_3_3=4", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["mu_b"][3], serde_json::json!(["0", "0", "15/2", "1"]));
    assert_eq!(v["catalog"]["matches"], true);
    let o = nakayama(&["catalog", "--case", "qm1-a", "--q", "-1", "--param", "g11=1", "--param", "g13=2", "--param", "g21=0", "--param", "g23=3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("closed form matches: true"));
}

#[test]
fn certify_jordan_to_eight() {
    let o = nakayama(&["certify", "--input", &example("jordan.json"), "--koszul-bound", "8", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["certification"]["d"], 2);
    assert_eq!(v["certification"]["as_regular"], true);
    assert_eq!(v["koszul_bound"], 8);
}

#[test]
fn output_is_byte_stable() {
    let args = ["superpotential", "--input", &example("jordan.json"), "--format", "json", "--check-level", "paranoid"];
    let (a, b) = (nakayama(&args), nakayama(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["superpotential_checks"]["quotient_of_omega_hat_is_r_hat"], true);
    assert_eq!(v["mu_a"], serde_json::json!([["1", "2"], ["0", "1"]]));
}

#[test]
fn nakayama_reads_standard_input() {
    let doc = r#"{"generators": ["a", "b"], "relations": [[{"coefficient": "1", "word": ["a", "b"]}, {"coefficient": "-3", "word": ["b", "a"]}]],
                  "automorphism": [["2", "0"], ["0", "0.5"]]}"#;
    let o = with_stdin(&["nakayama", "--input", "-", "--format", "json"], doc);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["mu_a"], serde_json::json!([["3", "0"], ["0", "1/3"]]));
    assert_eq!(v["hdet"], "1");
}

#[test]
fn exit_codes() {
    let malformed = with_stdin(&["ore", "--input", "-"], "{\"generators\": [\"x\"]");
    assert_eq!(malformed.status.code(), Some(1));
    assert_eq!(nakayama(&["ore"]).status.code(), Some(1));
    assert_eq!(nakayama(&["ore", "--input", "/nonexistent.json"]).status.code(), Some(1));

    let free = r#"{"generators": ["x", "y"], "relations": []}"#;
    assert_eq!(with_stdin(&["certify", "--input", "-"], free).status.code(), Some(2));
    let monomial = r#"{"generators": ["x", "y"], "relations": [[{"coefficient": "1", "word": ["x", "x"]}]]}"#;
    assert_eq!(with_stdin(&["certify", "--input", "-"], monomial).status.code(), Some(2));

    let comm = |extra: &str| {
        format!(r#"{{"generators": ["x", "y"], "relations": [[{{"coefficient": "1", "word": ["x", "y"]}}, {{"coefficient": "-1", "word": ["y", "x"]}}]]{extra}}}"#)
    };
    let singular = comm(r#", "automorphism": [["1", "1"], ["1", "1"]]"#);
    assert_eq!(with_stdin(&["ore", "--input", "-"], &singular).status.code(), Some(3));
    let quantum = r#"{"generators": ["x", "y"], "relations": [[{"coefficient": "1", "word": ["x", "y"]}, {"coefficient": "-2", "word": ["y", "x"]}]],
                      "automorphism": [["0", "1"], ["1", "0"]]}"#;
    assert_eq!(with_stdin(&["ore", "--input", "-"], quantum).status.code(), Some(3));
    let bad_delta = r#"{"generators": ["x", "y"], "relations": [[{"coefficient": "1", "word": ["x", "y"]}, {"coefficient": "-2", "word": ["y", "x"]}]],
                        "derivation": {"x": [{"coefficient": "1", "word": ["y", "y"]}]}}"#;
    assert_eq!(with_stdin(&["ore", "--input", "-"], bad_delta).status.code(), Some(3));
    let wrong_command = comm(r#", "options": {"command": "certify"}"#);
    assert_eq!(with_stdin(&["ore", "--input", "-"], &wrong_command).status.code(), Some(1));

    let precondition = nakayama(&["catalog", "--case", "comm-b", "--param", "m11=1", "--param", "m12=0"]);
    assert_eq!(precondition.status.code(), Some(1));
    assert_eq!(nakayama(&["catalog", "--case", "nope"]).status.code(), Some(1));
    assert_eq!(nakayama(&["--help"]).status.code(), Some(0));
}
