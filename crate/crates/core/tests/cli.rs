use std::io::Write;
use std::process::{Command, Output, Stdio};

use branecalc::format::{format_element, parse_element};
use branecalc::gca::{FreeGca, Generator};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.model", env!("CARGO_MANIFEST_DIR"))
}

fn branecalc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_branecalc"))
        .args(args)
        .env_remove("BRANECALC_MAX_DEGREE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_reports_generators() {
    let out = branecalc(&["check", &fixture("s4")], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("generator y 7    d = 1 x^2"), "{text}");
    assert!(text.contains("pure: yes"));
    assert!(text.contains("max degree 18"));
}

#[test]
fn stdin_matches_file() {
    let model = std::fs::read_to_string(fixture("k46")).unwrap();
    let a = branecalc(&["cohomology", &fixture("k46"), "--max-degree", "12"], None);
    let b = branecalc(&["cohomology", "-", "--max-degree", "12"], Some(&model));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(
        stdout(&a).lines().skip(1).collect::<Vec<_>>(),
        stdout(&b).lines().skip(1).collect::<Vec<_>>()
    );
}

#[test]
fn env_var_sets_truncation() {
    let out = Command::new(env!("CARGO_BIN_EXE_branecalc"))
        .args(["cohomology", &fixture("lx4")])
        .env("BRANECALC_MAX_DEGREE", "6")
        .output()
        .unwrap();
    let text = stdout(&out);
    assert!(text.contains("H^6 = 0"));
    assert!(!text.contains("H^7"));
}

#[test]
fn json_output_is_byte_stable() {
    let args = [
        "brane",
        &fixture("k46"),
        "--k",
        "2",
        "--op",
        "composite",
        "--format",
        "json",
        "--max-degree",
        "12",
    ];
    let a = branecalc(&args, None);
    let b = branecalc(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "NONTRIVIAL");
    assert_eq!(v["result"]["shift"], 0);
    assert_eq!(v["command"]["op"], "composite");
    assert_eq!(v["max_degree"], 12);
}

#[test]
fn brane_images_parse_back() {
    let out = branecalc(
        &[
            "brane",
            &fixture("lx4"),
            "--k",
            "2",
            "--op",
            "coproduct",
            "--format",
            "json",
            "--max-degree",
            "8",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let target = FreeGca::new(vec![
        Generator::new("x", 4),
        Generator::new("s1x", 3),
        Generator::new("sx", 3),
        Generator::new("ss1x", 2),
    ])
    .unwrap();
    let mut checked = 0;
    for slice in v["result"]["slices"].as_array().unwrap() {
        for name in slice["target_basis"].as_array().unwrap() {
            let e = parse_element(name.as_str().unwrap(), &target).unwrap();
            assert_eq!(e.terms().len(), 1);
            assert_eq!(parse_element(&format_element(&e), &target).unwrap(), e);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn text_brane_shows_witness() {
    let out = branecalc(&["brane", &fixture("lx6"), "--k", "4", "--op", "composite"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("witness: sx ↦ -1 s3x^1"), "{text}");
}

#[test]
fn odd_k_is_out_of_scope() {
    let out = branecalc(&["brane", &fixture("lx6"), "--k", "3", "--op", "coproduct"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("out of scope"), "{}", stderr(&out));
}

#[test]
fn insufficient_connectivity_is_an_input_error() {
    let out = branecalc(&["verify", &fixture("s4"), "--k", "4"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("4-connected"));
}

#[test]
fn malformed_model_reports_position() {
    let out = branecalc(&["check", "-"], Some("generator x 4\ngenerator y 7\nd y = x^2 + w\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3, column"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = branecalc(&["check", "/nonexistent/model"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        branecalc(&["brane", &fixture("s4"), "--k", "2"], None).status.code(),
        Some(2)
    );
    assert_eq!(branecalc(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(branecalc(&["--help"], None).status.code(), Some(0));
}

#[test]
fn verify_passes_on_a_sphere() {
    let out = branecalc(
        &[
            "verify",
            &fixture("s6"),
            "--k",
            "4",
            "--format",
            "json",
            "--max-degree",
            "16",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}
