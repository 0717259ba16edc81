use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};
use tempfile::NamedTempFile;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", self.stdout))
    }
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let argv: Vec<String> = std::iter::once("nset")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = nset_cli::dispatch(&argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn file(contents: &Value) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    write!(f, "{contents}").unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn trivial() -> Value {
    json!({"n": 2, "m": 1, "u": [[0, 0]]})
}

#[test]
fn diffset_of_the_unit_square_tiling_is_the_three_by_three_block() {
    let f = file(&trivial());
    let r = run(&["diffset", path(&f)]);
    assert_eq!(r.code, 0);
    let points = r.json()["points"].as_array().unwrap().len();
    assert_eq!(points, 9);
}

#[test]
fn diffset_accepts_box_unions() {
    let f = file(&json!({"n": 1, "boxes": [[["0", "1/2"]]]}));
    let r = run(&["diffset", path(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"n": 1, "points": [[0]]}));
}

#[test]
fn verify_reports_the_offending_point() {
    let f = file(&trivial());
    let r = run(&["verify", path(&f), "--lines", "axes"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json(), json!({"confined": false, "offending": [1, 1]}));

    let interval = file(&json!({"n": 1, "m": 1, "u": [[0]]}));
    let r = run(&["verify", path(&interval)]);
    assert_eq!(
        (r.code, r.json()),
        (0, json!({"confined": true, "offending": null}))
    );
}

#[test]
fn verify_reads_line_files() {
    let t = file(&trivial());
    let lines = file(&json!({"dirs": [[0, 1], [2, 0]]}));
    let r = run(&["verify", path(&t), "--lines", path(&lines)]);
    assert_eq!(
        (r.code, r.json()),
        (1, json!({"confined": false, "offending": [1, 1]}))
    );

    let interval = file(&json!({"n": 1, "m": 1, "u": [[0]]}));
    let r = run(&[
        "verify",
        path(&interval),
        "--lines",
        path(&file(&json!({"dirs": [[-3]]}))),
    ]);
    assert_eq!((r.code, r.json()["confined"].clone()), (0, json!(true)));

    let too_many = file(&json!({"dirs": [[1, 0], [0, 1], [1, 1]]}));
    assert_eq!(
        run(&["verify", path(&t), "--lines", path(&too_many)]).code,
        2
    );

    let wrong_dim = file(&json!({"dirs": [[1, 0, 0]]}));
    let r = run(&["verify", path(&t), "--lines", path(&wrong_dim)]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}

#[test]
fn confined_search_in_the_plane_is_exhausted() {
    let r = run(&["search", "confined", "--n", "2", "--m", "2", "--bound", "2"]);
    assert_eq!(r.code, 1);
    let doc = r.json();
    assert_eq!(doc["outcome"], "ExhaustedUnsat");
    assert_eq!(doc["witness"], Value::Null);
    assert_eq!(doc["bound_complete"], true);
    assert!(doc.get("elapsed_ms").is_none());
}

#[test]
fn confined_search_on_the_line_finds_a_witness() {
    let r = run(&["search", "confined", "--n", "1", "--m", "2", "--bound", "1"]);
    assert_eq!(r.code, 0);
    let doc = r.json();
    assert_eq!(doc["outcome"], "Witness");
    assert_eq!(doc["witness"]["m"], 2);
}

#[test]
fn search_output_is_byte_deterministic() {
    let args = ["search", "confined", "--n", "2", "--m", "3", "--bound", "1"];
    let first = run(&args).stdout;
    for threads in ["1", "2", "4"] {
        let mut a = args.to_vec();
        a.extend(["--threads", threads]);
        assert_eq!(run(&a).stdout, first, "{threads} threads");
    }
    let timed = run(&[&args[..], &["--timing"]].concat()).json();
    assert!(timed["elapsed_ms"].is_number());
}

#[test]
fn realize_sweep_finds_the_interval_tiling() {
    let target = file(&json!({"n": 1, "points": [[-1], [0], [1]]}));
    let r = run(&[
        "search",
        "realize",
        "--target",
        path(&target),
        "--max-m",
        "3",
        "--bound",
        "2",
    ]);
    assert_eq!(r.code, 0);
    let doc = r.json();
    assert_eq!(doc["outcome"], "Witness");
    assert_eq!(doc["witness"], json!({"n": 1, "m": 1, "u": [[0]]}));
}

#[test]
fn realize_sweep_reports_unreachable_targets() {
    // Not symmetric, so never a difference set.
    let target = file(&json!({"n": 1, "points": [[0], [1]]}));
    let r = run(&[
        "search",
        "realize",
        "--target",
        path(&target),
        "--max-m",
        "2",
        "--bound",
        "1",
    ]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn canon_is_idempotent_and_orbit_invariant() {
    let t = json!({"n": 2, "m": 2, "u": [[0, 0], [1, -1], [0, 1], [-1, 0]]});
    let c = run(&["canon", path(&file(&t))]);
    assert_eq!(c.code, 0);
    let again = run(&["canon", path(&file(&c.json()))]);
    assert_eq!(again.stdout, c.stdout);
    // Swapping the axes gives an equivalent tiling.
    let swapped = json!({"n": 2, "m": 2, "u": [[0, 0], [1, 0], [-1, 1], [0, -1]]});
    assert_eq!(run(&["canon", path(&file(&swapped))]).stdout, c.stdout);
}

#[test]
fn refine_reports_the_stable_level() {
    let k = file(&json!({"n": 1, "boxes": [[["0", "6/7"]], [["-1/8", "-1/8"]]]}));
    let r = run(&["refine", path(&k)]);
    assert_eq!(r.code, 0);
    let doc = r.json();
    assert_eq!(doc["N0"], 7);
    assert_eq!(doc["exact_diffset"], json!([[0]]));

    let r = run(&["refine", path(&k), "--max-n", "5"]);
    assert_eq!(r.code, 1);
    assert_eq!(
        r.json(),
        json!({"N0": null, "max_n": 5, "exact_diffset": [[0]]})
    );
}

#[test]
fn topology_of_the_trivial_tiling() {
    let r = run(&["topology", path(&file(&trivial()))]);
    assert_eq!(r.code, 0);
    let doc = r.json();
    assert_eq!(doc["cocycle_ok"], true);
    assert_eq!(doc["generator_gains"], json!([[-1, 0], [0, -1]]));
    assert!(
        doc["coloring"].get("mixed_cell").is_some()
            || doc["coloring"].get("non_axial_edge").is_some()
    );
}

#[test]
fn schema_errors_exit_with_two_and_no_stdout() {
    let bad = [
        json!({"n": 2, "m": 1}),
        json!({"n": 2, "m": 2, "u": [[0, 0]]}),
        json!({"n": 2, "m": 1, "u": [[0, 0]], "extra": 1}),
        json!({"n": 1, "boxes": [[["1", "0"]]]}),
    ];
    for doc in bad {
        let r = run(&["diffset", path(&file(&doc))]);
        assert_eq!(r.code, 2, "{doc}");
        assert!(r.stdout.is_empty());
        assert!(r.stderr.starts_with("error:"), "{}", r.stderr);
    }
    let r = run_with_stdin(&["diffset", "-"], "not json");
    assert_eq!((r.code, r.stdout.as_str()), (2, ""));
    assert_eq!(run(&["diffset", "/nonexistent/file.json"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["search", "confined", "--n", "2"]).code, 2);
}

#[test]
fn schemas_are_printed_for_every_document_type() {
    for name in ["tiling", "boxes", "lattice-set", "lines"] {
        let r = run(&["--schema", name]);
        assert_eq!(r.code, 0);
        assert_eq!(
            r.json()["$schema"],
            "https://json-schema.org/draft/2020-12/schema"
        );
    }
    assert_eq!(run(&["--schema", "nope"]).code, 2);
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("search"));
    assert!(r.stderr.is_empty());
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nset"))
        .args(["diffset", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(trivial().to_string().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len(), 9);
}

#[test]
fn binary_exit_codes() {
    let f = file(&trivial());
    let status = Command::new(env!("CARGO_BIN_EXE_nset"))
        .args(["verify", path(&f)])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(1));
    let status = Command::new(env!("CARGO_BIN_EXE_nset"))
        .arg("bogus")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}
