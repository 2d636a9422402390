use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn regcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_main_random_trials_pass() {
    let out = regcert(&["verify", "main", "--n", "2", "--m", "2", "--d", "2", "--trials", "5", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("main: pass (5 instance(s), field GF(32003), seed 7)"));
}

#[test]
fn gtable_lists_small_values() {
    let out = regcert(&["gtable", "--n", "1..2", "--d", "2..3", "--m", "1..2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["check"], "gtable");
    assert_eq!(report["status"], "pass");
    let instances = report["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 8);
    let g_values: Vec<i64> = instances.iter().map(|i| i["values"]["G"].as_i64().unwrap()).collect();
    assert!(g_values.contains(&2));
    let text = stdout(&regcert(&["gtable", "--n", "1", "--d", "2", "--m", "1"]));
    assert!(text.contains("  1  2  1        2             2"), "{text}");
}

#[test]
fn non_homogeneous_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "nonhomog.txt", "ring x1 x2; gens: x1^2 + x2\n");
    let out = regcert(&["reg", "--ideal", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not homogeneous"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(regcert(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(regcert(&["verify", "main", "--n", "2"]).status.code(), Some(64));
    assert_eq!(regcert(&["gtable", "--n", "2..1", "--d", "2", "--m", "1"]).status.code(), Some(64));
    assert_eq!(regcert(&["reg", "--ideal", "/nonexistent/file"]).status.code(), Some(64));
    assert_eq!(regcert(&["verify", "main", "--n", "2", "--m", "2", "--d", "2", "--char", "6"]).status.code(), Some(64));
    assert_eq!(regcert(&["--help"]).status.code(), Some(0));
    assert_eq!(regcert(&["--version"]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_their_position() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.txt", "ring x1 x2;\ngens: x1 +\n");
    let out = regcert(&["reg", "--ideal", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 1"));
}

#[test]
fn regularity_of_the_two_examples() {
    let dir = TempDir::new().unwrap();
    let squares = write(&dir, "sq.txt", "ring x1 x2; char 0; gens: x1^2, x2^2\n");
    let out = regcert(&["reg", "--ideal", squares.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reg"], 3);
    assert_eq!(json(&out)["field"], "QQ");

    let second = write(&dir, "ex2.txt", "ring x1 x2 x3; order elim 2; gens: x1*x2 + x2*x3, x1*x3, x3^2\n");
    let out = regcert(&["verify", "regbound", "--ideal", second.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let values = &json(&out)["instances"][0]["values"];
    assert_eq!(values["reg(J)"], 2);
    assert_eq!(values["reg(I)"], 3);
}

#[test]
fn kernel_output_is_an_ideal_file() {
    let dir = TempDir::new().unwrap();
    let conic = write(&dir, "conic.txt", "param n=3 m=2 d=2; f: y1^2, y1*y2, y2^2\n");
    let out = regcert(&["kernel", "--param", conic.to_str().unwrap(), "--char", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ring x1 x2 x3; char 0; order lex; gens: x3*x1 - x2^2\n");
    let kernel = write(&dir, "kernel.txt", &stdout(&out));
    let out = regcert(&["reg", "--ideal", kernel.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("reg(I) = 2\n"));
}

#[test]
fn lex_cutoff_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "cubic.txt", "ring x1 x2 x3; gens: x1^3 + x2^3 + x3^3, x1*x2*x3\n");
    let out = regcert(&["lex", "--ideal", path.to_str().unwrap(), "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).contains("inconclusive"));
    let out = regcert(&["lex", "--ideal", path.to_str().unwrap(), "--cutoff", "60"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn regflat_and_poweli_from_files() {
    let dir = TempDir::new().unwrap();
    let squares = write(&dir, "sq.txt", "ring x1 x2; gens: x1^2, x2^2\n");
    let out = regcert(&["verify", "regflat", "--ideal", squares.to_str().unwrap(), "--d", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let values = &json(&out)["instances"][0]["values"];
    assert_eq!(values["reg(I')"], 7);
    assert_eq!(values["reg(I')/d - reg(I)"], "1/2");

    let out = regcert(&[
        "verify", "poweli", "--ideal", squares.to_str().unwrap(), "--dvec", "2,3", "--keep", "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = regcert(&["verify", "poweli", "--ideal", squares.to_str().unwrap(), "--dvec", "2,3"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn reports_are_deterministic_and_can_be_written_to_a_file() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = regcert(&[
            "verify", "regbound", "--trials", "4", "--seed", "3", "--json", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.stdout.is_empty());
        assert!(matches!(out.status.code(), Some(0) | Some(2)));
    }
    let strip = |p: &PathBuf| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    let report = strip(&a);
    assert_eq!(report, strip(&b));
    for key in ["check", "status", "field", "seed", "instances"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["seed"], 3);
}

#[test]
fn rational_and_prime_fields_agree_on_the_first_example() {
    let dir = TempDir::new().unwrap();
    let squares = write(&dir, "sq.txt", "ring x1 x2; gens: x1^2, x2^2\n");
    let reg = |ch: &str| json(&regcert(&["reg", "--ideal", squares.to_str().unwrap(), "--char", ch, "--json"]))["reg"].clone();
    assert_eq!(reg("0"), reg("32003"));
    assert_eq!(reg("0"), reg("2"));
}
