//! End-to-end tests of the binary: output contracts, exit codes,
//! determinism, file round trips, and the fixture directory override.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_angulata"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_tilting(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_owned()
}

const PENTAGON: &str = r#"{"d":1,"n":2,"summands":[[0,2],[0,3]]}"#;

#[test]
fn object_count_and_fixture_verification() {
    let out = run(&["objects", "--d", "3", "--n", "3", "--count"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "25\n");

    let out = run(&["verify-fixture"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "25/25 vectors match\n");

    let out = run(&["verify-fixture", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], 25);
    assert_eq!(v["matches"], 25);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn mutate_reports_replacement_and_frame() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tilting(dir.path(), "pentagon.json", PENTAGON);

    let out = run(&["mutate", "--tilting", &path, "--at", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("replacement: 1,3"), "{text}");
    assert!(text.contains("frame: 0,1,2,3"), "{text}");
    assert!(text.contains("tilting: 1,3;0,3"), "{text}");

    // The exchange undoes itself from the same slot.
    let out = run(&["mutate", "--tilting", &path, "--at", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["replacement"], "1,3");
    assert_eq!(v["frame"], serde_json::json!([0, 1, 2, 3]));
    let back = write_tilting(dir.path(), "mutated.json", &v["tilting"].to_string());
    let out = run(&["mutate", "--tilting", &back, "--at", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("replacement: 0,2"));
}

#[test]
fn index_shear_and_trop_vector_output() {
    let dir = tempfile::tempdir().unwrap();
    let pentagon = write_tilting(dir.path(), "pentagon.json", PENTAGON);
    let fan6 = write_tilting(
        dir.path(),
        "fan6.json",
        r#"{"d":1,"n":3,"summands":[[0,2],[0,3],[0,4]]}"#,
    );

    let out = run(&["index", "--tilting", &pentagon, "--object", "1,4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "basis: 0,2;0,3\ncoeffs: -1,0\n");

    let out = run(&["shear", "--tilting", &fan6, "--arc", "5/2,9/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "basis: 0,2;0,3;0,4\ncoeffs: 0,-1,1\n");

    // A second arc rounding to nothing adds nothing.
    let out = run(&[
        "shear", "--tilting", &fan6, "--arc", "5/2,9/2", "--arc", "1/2,3/2", "--json",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"basis\":[\"0,2\",\"0,3\",\"0,4\"],\"coeffs\":[0,-1,1]}\n"
    );

    let out = run(&["trop", "--tilting", &pentagon, "--at", "1", "--object", "1,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "basis: 1,3;0,3\ncoeffs: -1,0\n");
}

#[test]
fn graph_summary_and_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["graph", "--d", "1", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "nodes: 14\nedges: 21\n");

    let pentagon = write_tilting(dir.path(), "pentagon.json", PENTAGON);
    let dot = dir.path().join("pent.dot");
    let out = run(&[
        "graph",
        "--tilting",
        &pentagon,
        "--dot",
        dot.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph exchange {"));
    assert!(dot_text.contains(" -- "));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["tiltings", "--d", "3", "--n", "2", "--json"],
        vec!["graph", "--d", "1", "--n", "3", "--json"],
        vec!["objects", "--d", "3", "--n", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes_separate_usage_domain_and_success() {
    // Usage problems: exit 1.
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(
        run(&["objects", "--d", "1", "--n", "2", "--bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["graph"]).status.code(), Some(1));
    assert_eq!(run(&["objects", "--d", "1"]).status.code(), Some(1));

    // Help and version: exit 0.
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(stdout(&run(&["--version"])), "angulata 0.1.0\n");

    // Domain problems: exit 2.
    let dir = tempfile::tempdir().unwrap();
    let pentagon = write_tilting(dir.path(), "pentagon.json", PENTAGON);
    let out = run(&["index", "--tilting", &pentagon, "--object", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cyclically consecutive"));

    let out = run(&["mutate", "--tilting", &pentagon, "--at", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("nope.json").to_str().unwrap().to_owned();
    let out = run(&["mutate", "--tilting", &missing, "--at", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));

    // A slot with no exchange partner is a domain error, not a crash.
    let frozen = write_tilting(
        dir.path(),
        "frozen.json",
        r#"{"d":3,"n":2,"summands":[[0,2,4,6],[0,2,4,7],[0,2,5,7],[0,3,5,7]]}"#,
    );
    let out = run(&["mutate", "--tilting", &frozen, "--at", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not mutable"));

    // Exhausted budgets: exit 2 with a hint.
    let out = run(&["tiltings", "--d", "1", "--n", "4", "--max-nodes", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--max-nodes"));
}

#[test]
fn closed_stdout_pipe_ends_the_run_quietly() {
    use std::io::Read;
    use std::process::Stdio;

    // 4862 listing lines overflow the pipe buffer once the reader is gone.
    let mut child = bin()
        .args(["tiltings", "--d", "1", "--n", "8"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut out = child.stdout.take().unwrap();
    let mut first = [0u8; 8];
    out.read_exact(&mut first).unwrap();
    drop(out);
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
    let mut err = String::new();
    child.stderr.take().unwrap().read_to_string(&mut err).unwrap();
    assert!(err.is_empty(), "{err}");
}

#[test]
fn fixture_dir_override_is_honored() {
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../angulata/fixtures/d3n3_index_mutation.json");
    let text = std::fs::read_to_string(bundled).unwrap();
    let dir = tempfile::tempdir().unwrap();

    // Verbatim copy verifies like the compiled-in table.
    std::fs::write(dir.path().join("d3n3_index_mutation.json"), &text).unwrap();
    let out = bin()
        .args(["verify-fixture"])
        .env("ANGULATA_FIXTURE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "25/25 vectors match\n");

    // A corrupted row is reported and fails the run.
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["rows"][0]["after"][0] = serde_json::json!(99);
    std::fs::write(
        dir.path().join("d3n3_index_mutation.json"),
        v.to_string(),
    )
    .unwrap();
    let out = bin()
        .args(["verify-fixture"])
        .env("ANGULATA_FIXTURE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("24/25 vectors match"), "{text}");
    assert!(text.contains("row 0:"), "{text}");

    // A missing override directory is a domain error.
    let out = bin()
        .args(["verify-fixture"])
        .env("ANGULATA_FIXTURE_DIR", dir.path().join("absent"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
