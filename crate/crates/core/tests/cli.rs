//! The `pfdkit` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use pfdkit::fixtures::fixture_dir;

fn fixture(name: &str) -> String {
    fixture_dir().join(name).to_string_lossy().into_owned()
}

fn pfdkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfdkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pfdkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn help_and_usage_errors() {
    let help = pfdkit(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("decompose"));
    assert_eq!(code(&pfdkit(&["frobnicate"])), 2);
    assert_eq!(code(&pfdkit(&["pfd"])), 2);
    assert_eq!(code(&pfdkit(&["pfd", "/nonexistent/problem"])), 2);
}

#[test]
fn malformed_problem_is_an_input_error() {
    let p = scratch("bad.problem", "mode: projective\nvars: x y\nnumerator: x +\ndenominators:\n  x\n");
    let o = pfdkit(&["pfd", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn intro_decomposition_is_deterministic_and_verifies() {
    let intro = fixture("intro.problem");
    let first = pfdkit(&["pfd", &intro]);
    let second = pfdkit(&["pfd", &intro]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("degree: 1\n"));
    assert!(text.contains("terms: 3\n"));
    assert!(text.contains("certification: maximal\n"));

    let doc = scratch("intro.pfd", &text);
    let v = pfdkit(&["verify", doc.to_str().unwrap(), &intro]);
    assert_eq!((code(&v), stdout(&v).as_str()), (0, "valid\n"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let braid = fixture("braid5.problem");
    let default = pfdkit(&["decompose", &braid, "-d", "8"]);
    let single = Command::new(env!("CARGO_BIN_EXE_pfdkit"))
        .args(["decompose", &braid, "-d", "8"])
        .env("PFDKIT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&default), 0);
    assert_eq!(default.stdout, single.stdout);
}

#[test]
fn output_file_and_json() {
    let out = std::env::temp_dir().join(format!("pfdkit-cli-{}-o.pfd", std::process::id()));
    let o = pfdkit(&["pfd", &fixture("intro.problem"), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&out).unwrap(), o.stdout);
    let _ = std::fs::remove_file(out);

    let j = pfdkit(&["pfd", "--json", &fixture("intro.problem")]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).expect("valid json");
    assert_eq!(v["degree"], 1);
    assert_eq!(v["terms"].as_array().map(Vec::len), Some(3));
}

#[test]
fn tampered_document_is_invalid() {
    let printed = std::fs::read_to_string(fixture("intro_printed.pfd")).unwrap();
    let bad = scratch("tampered.pfd", &printed.replacen("numerator: 2", "numerator: 3", 1));
    let v = pfdkit(&["verify", bad.to_str().unwrap(), &fixture("intro.problem")]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).starts_with("invalid: "));
}

#[test]
fn check_methods_agree() {
    let intro = fixture("intro.problem");
    for (degree, expected) in [("1", 0), ("2", 1), ("3", 1)] {
        let answers: Vec<(i32, String)> = ["flats", "gb", "linear"]
            .iter()
            .map(|m| {
                let o = pfdkit(&["check", &intro, "--degree", degree, "--method", m]);
                (code(&o), stdout(&o).lines().next().unwrap_or("").to_string())
            })
            .collect();
        assert!(answers.iter().all(|a| a.0 == expected), "degree {degree}: {answers:?}");
        assert!(answers.windows(2).all(|w| w[0].1 == w[1].1));
    }
    let o = pfdkit(&["check", &intro, "--degree", "2"]);
    assert!(stdout(&o).contains("witness: flat"));
}

#[test]
fn no_positive_degree_is_a_negative_answer() {
    let p = scratch("constant.problem", "mode: projective\nvars: x y\nnumerator: 1\ndenominators:\n  x\n  y\n");
    let o = pfdkit(&["pfd", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "no decomposition of positive degree\n");
}

#[test]
fn reduce_reports_removed_forms() {
    let o = pfdkit(&["reduce", &fixture("spurious.problem")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("removed: 1\n"));
    let o = pfdkit(&["reduce", &fixture("intro.problem")]);
    assert!(stdout(&o).starts_with("no factors removed\n"));
}

#[test]
fn decompose_reports_and_verifies() {
    let grid = fixture("affine_grid.problem");
    let o = pfdkit(&["decompose", &grid, "-d", "3", "--verify"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("components: 2\n"));
    assert!(text.contains("verified: the components intersect to the ideal"));

    let csv = stdout(&pfdkit(&["decompose", &grid, "-d", "3", "--csv"]));
    assert_eq!(csv, "flat,size,exponent\n1;2;5,3,1\n3;4;5,3,1\n");
}

#[test]
fn component_cap_is_a_resource_guard() {
    let o = pfdkit(&["decompose", &fixture("braid5.problem"), "-d", "8", "--verify", "--cap", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn flats_and_braid_listings() {
    let csv = stdout(&pfdkit(&["flats", &fixture("braid5.problem"), "--with-top", "--csv"]));
    assert_eq!(csv.lines().count(), 1 + 51);
    assert_eq!(csv.lines().next(), Some("flat,size,rank"));

    let o = stdout(&pfdkit(&["braid", "-r", "5", "-d", "8"]));
    assert!(o.contains("(2,2,1): 15 flats of size 2"));
    assert!(o.ends_with("census: 1 x exp 8, 5 x exp 4, 10 x exp 2, 10 x exp 1\n"));
}

#[test]
fn restricted_generators_give_a_lower_bound() {
    let singles = scratch("singles.txt", "1\n2\n3\n");
    let o = pfdkit(&["pfd", &fixture("intro.problem"), "--restrict-generators", singles.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("certification: lower-bound\n"));

    let pair = scratch("pair.txt", "1 2\n");
    let o = pfdkit(&["pfd", &fixture("intro.problem"), "--restrict-generators", pair.to_str().unwrap()]);
    assert_eq!(code(&o), 1);

    let bad = scratch("bad.txt", "1 9\n");
    assert_eq!(code(&pfdkit(&["pfd", &fixture("intro.problem"), "--restrict-generators", bad.to_str().unwrap()])), 2);
}
