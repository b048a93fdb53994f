use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arrfree_core::certificate::{verify_certificate, CertificateJson};
use serde_json::Value;
use tempfile::TempDir;

fn arrfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

/// Generates a family file through the CLI itself.
fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = arrfree(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    write(dir, name, &stdout(&o))
}

fn run_ok(args: &[&str], file: &Path) -> String {
    let mut full = args.to_vec();
    full.push(file.to_str().unwrap());
    let o = arrfree(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

fn run_code(args: &[&str], file: &Path) -> i32 {
    let mut full = args.to_vec();
    full.push(file.to_str().unwrap());
    arrfree(&full).status.code().unwrap()
}

#[test]
fn lattice_of_boolean_plane() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "b2.json", &["boolean", "2"]);
    let out = run_ok(&["lattice"], &f);
    assert!(out.starts_with("4 flats"));
    let json: Value = serde_json::from_str(&run_ok(&["lattice", "--json"], &f)).unwrap();
    let mobius: Vec<i64> = json["flats"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["mobius"].as_i64().unwrap())
        .collect();
    assert_eq!(mobius, vec![1, -1, -1, 1]);
}

#[test]
fn lattice_of_braid_three() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "br3.json", &["braid", "3"]);
    let out = run_ok(&["lattice"], &f);
    assert!(out.contains("   1      2  {0,1,2}"), "{out}");
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [
        ("syntax.json", "{\"dim\": 2, "),
        ("zero.json", r#"{"dim": 2, "hyperplanes": [[0, 0]]}"#),
        ("width.json", r#"{"dim": 2, "hyperplanes": [[1, 0, 0]]}"#),
        (
            "extra.json",
            r#"{"dim": 2, "hyperplanes": [[1, 0]], "colour": 1}"#,
        ),
        (
            "mult.json",
            r#"{"dim": 2, "hyperplanes": [[1, 0]], "multiplicity": [1, 2]}"#,
        ),
    ] {
        let f = write(&dir, name, body);
        assert_eq!(run_code(&["charpoly"], &f), 2, "{name}");
    }
    let missing = dir.path().join("missing.json");
    let o = arrfree(&["lattice", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn charpolys() {
    let dir = TempDir::new().unwrap();
    let braid = gen(&dir, "br3.json", &["braid", "3"]);
    assert!(run_ok(&["charpoly"], &braid).contains("factored = t(t-1)(t-2)"));
    let generic = gen(&dir, "g34.json", &["generic", "3", "4"]);
    let out = run_ok(&["charpoly"], &generic);
    assert!(out.contains("chi(t) = t^3 - 4t^2 + 6t - 3"), "{out}");
    assert!(out.contains("split = no"));
    let empty = write(&dir, "empty.json", r#"{"dim": 2, "hyperplanes": []}"#);
    let out = run_ok(&["charpoly"], &empty);
    assert!(out.contains("chi(t) = t^2"));
    assert!(out.contains("factored = t^2"));
}

#[test]
fn free_verdicts() {
    let dir = TempDir::new().unwrap();
    let braid = gen(&dir, "br4.json", &["braid", "4"]);
    let out = run_ok(&["free"], &braid);
    assert!(out.starts_with("FREE\nexponents: (0, 1, 2, 3)"), "{out}");

    let generic = gen(&dir, "g34.json", &["generic", "3", "4"]);
    let out = run_ok(&["free"], &generic);
    assert!(out.starts_with("NONFREE (charpoly-nonsplit)"), "{out}");

    let multi = write(
        &dir,
        "m211.json",
        r#"{"dim": 3, "hyperplanes": [[1,0,0],[0,1,0],[0,0,1]], "multiplicity": [2,1,1]}"#,
    );
    let out = run_ok(&["free"], &multi);
    assert!(out.contains("exponents: (1, 1, 2)"), "{out}");

    let out = run_ok(&["free", "--dmax", "1"], &braid);
    assert!(out.starts_with("UNDECIDED"), "{out}");
}

#[test]
fn json_certificates_recheck() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("br4.json", vec!["braid", "4"]),
        ("g45.json", vec!["generic", "4", "5"]),
        ("b3.json", vec!["boolean", "3"]),
    ] {
        let f = gen(&dir, name, &args);
        let text = run_ok(&["free", "--json"], &f);
        let cert = CertificateJson::parse(&text).unwrap();
        verify_certificate(&cert).unwrap();
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "br3.json", &["braid", "3"]);
    let target = dir.path().join("cert.json");
    let o = arrfree(&[
        "free",
        "--json",
        "--out",
        target.to_str().unwrap(),
        f.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let cert = CertificateJson::parse(&std::fs::read_to_string(&target).unwrap()).unwrap();
    verify_certificate(&cert).unwrap();
}

#[test]
fn ziegler_restriction_output() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "br3.json", &["braid", "3"]);
    let out = run_ok(&["ziegler", "--pivot", "0"], &f);
    assert!(out.contains("|m| = 2"), "{out}");
    assert!(out.contains("exponents: (0, 2)"), "{out}");
    assert!(out.contains("restriction check CONSISTENT"), "{out}");
    assert_eq!(run_code(&["ziegler", "--pivot", "3"], &f), 2);

    let generic = gen(&dir, "g34.json", &["generic", "3", "4"]);
    let out = run_ok(&["ziegler", "--pivot", "1"], &generic);
    assert!(out.contains("theorem not applicable"), "{out}");
}

#[test]
fn yoshinaga_verdicts() {
    let dir = TempDir::new().unwrap();
    let boolean = gen(&dir, "b4.json", &["boolean", "4"]);
    let out = run_ok(&["yoshinaga", "--any"], &boolean);
    assert!(out.starts_with("yoshinaga[any]: FREE"), "{out}");
    assert!(out.contains("(agrees)"));

    let generic = gen(&dir, "g45.json", &["generic", "4", "5"]);
    let out = run_ok(&["yoshinaga", "--pivot", "0", "--jobs", "2"], &generic);
    assert!(out.starts_with("yoshinaga[pivot 0]: NONFREE"), "{out}");

    let braid = gen(&dir, "br3.json", &["braid", "3"]);
    let o = arrfree(&["yoshinaga", "--any", braid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ℓ ≥ 4"));

    let o = arrfree(&["yoshinaga", boolean.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "pivot or --any is required");
}

#[test]
fn gen_is_deterministic() {
    let braid = stdout(&arrfree(&["gen", "braid", "4"]));
    let v: Value = serde_json::from_str(&braid).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 6);

    let boolean: Value = serde_json::from_str(&stdout(&arrfree(&["gen", "boolean", "3"]))).unwrap();
    assert_eq!(
        boolean["hyperplanes"],
        serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    );

    let a = arrfree(&["gen", "generic", "4", "5", "--seed", "7"]);
    let b = arrfree(&["gen", "generic", "4", "5", "--seed", "7"]);
    let c = arrfree(&["gen", "generic", "4", "5", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stderr(&a).contains("seed: 7"));

    assert_eq!(arrfree(&["gen", "shi", "3"]).status.code(), Some(2));
    assert_eq!(arrfree(&["gen", "random", "4"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = arrfree(&["verify", "--suite", "mobius,terao,yoshinaga"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains(" 0 failed"), "{out}");
    assert!(!out.contains("FAIL"));

    let o = arrfree(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}
