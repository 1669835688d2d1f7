use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use toric_ml::report::{HolesDocument, MlStarDoc, ReportDocument, StatusDoc};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-ml"))
        .args(args)
        .env_remove("ML_TORIC_THREADS")
        .output()
        .expect("binary runs")
}

fn run_path(args: &[&str], path: &std::path::Path) -> Output {
    let mut all: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    all.insert(1, path.to_str().unwrap().to_string());
    let refs: Vec<&str> = all.iter().map(String::as_str).collect();
    run(&refs)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_input(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_example2_json() {
    let o = run_path(&["analyze", "--format", "json"], &fixture("example2"));
    assert_eq!(o.status.code(), Some(0));
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.flags.is_rigid_core, Some(true));
    assert_eq!(doc.split_k(), Some(1));
    assert_eq!(doc.status, StatusDoc::Complete);
    assert!(matches!(doc.ml_star_face, Some(MlStarDoc::Face { .. })));
}

#[test]
fn json_round_trips_byte_for_byte() {
    let o = run_path(&["analyze", "--format", "json"], &fixture("example5"));
    let text = stdout(&o);
    let doc = ReportDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let path = fixture("product");
    let mut outs = Vec::new();
    for threads in ["1", "4"] {
        let o = Command::new(env!("CARGO_BIN_EXE_toric-ml"))
            .args(["analyze", path.to_str().unwrap(), "--format", "json"])
            .env("ML_TORIC_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        outs.push(o.stdout);
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn bad_thread_count_is_invalid() {
    let o = Command::new(env!("CARGO_BIN_EXE_toric-ml"))
        .args(["analyze", fixture("a1").to_str().unwrap()])
        .env("ML_TORIC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn units_exit_3() {
    let o = run_path(&["analyze"], &fixture("units"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn holes_of_example5() {
    let o = run_path(&["holes", "--bound", "4", "--format", "json"], &fixture("example5"));
    assert_eq!(o.status.code(), Some(0));
    let doc: HolesDocument = serde_json::from_str(&stdout(&o)).unwrap();
    let got: Vec<String> = doc.holes.iter().map(ToString::to_string).collect();
    assert_eq!(got, ["(0,1)", "(0,2)", "(1,1)", "(2,1)", "(3,1)"]);
}

#[test]
fn invalid_documents_exit_2_with_location() {
    let f = temp_input("{\n  \"rank\": 2,\n  \"generators\": [\n    [1, 0],\n    [1, 0]\n  ]\n}\n");
    let o = run_path(&["analyze"], f.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 5"), "{err}");
    assert!(err.contains("generators[1]"), "{err}");

    let f = temp_input(r#"{"rank":3,"generators":[[1,0]]}"#);
    assert_eq!(run_path(&["analyze"], f.path()).status.code(), Some(2));
    let f = temp_input(r#"{"rank":2,"generators":[]}"#);
    assert_eq!(run_path(&["analyze"], f.path()).status.code(), Some(2));
    let f = temp_input("not json");
    assert_eq!(run_path(&["analyze"], f.path()).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn low_bounds_give_partial_report_and_exit_4() {
    let f = temp_input(r#"{"rank":3,"generators":[[1,0,0],[0,2,0],[0,3,0],[0,0,1]]}"#);
    let o = run_path(&["analyze", "--degree-bound", "2", "--format", "json"], f.path());
    assert_eq!(o.status.code(), Some(4));
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.status, StatusDoc::Partial);
    assert_eq!(doc.bounds.degree_bound, 2.into());
}

#[test]
fn exact_only_rejects_bounded_verdicts() {
    let f = temp_input(r#"{"rank":3,"generators":[[1,0,0],[0,2,0],[0,3,0],[0,0,1]]}"#);
    assert_eq!(run_path(&["analyze"], f.path()).status.code(), Some(0));
    assert_eq!(run_path(&["analyze", "--exact-only"], f.path()).status.code(), Some(4));
    assert_eq!(run_path(&["analyze", "--exact-only"], &fixture("example2")).status.code(), Some(0));
}

#[test]
fn text_and_json_agree() {
    for name in ["example1", "example2", "example3", "example5", "product"] {
        let j = ReportDocument::from_json(&stdout(&run_path(&["analyze", "--format", "json"], &fixture(name)))).unwrap();
        let t = stdout(&run_path(&["analyze"], &fixture(name)));
        assert_eq!(j.to_text(), t, "{name}");
    }
}

#[test]
fn roots_and_derive() {
    let o = run_path(&["roots", "--ray", "1", "--height", "2"], &fixture("example2"));
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("(-1,1)  no"), "{t}");
    let o = run_path(&["derive", "--ray", "1", "--root", "-1,0", "--apply", "2,3"], &fixture("example2"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= 2 x^(1,3)"));
    let o = run_path(&["derive", "--ray", "1", "--root", "-1,0", "--exp", "1,2,0"], &fixture("example2"));
    assert!(stdout(&o).contains("x^(0,0) + 2 x^(1,0) + x^(2,0)"));
    // not a root of this ray
    let o = run_path(&["derive", "--ray", "0", "--root", "-1,0", "--apply", "2,3"], &fixture("example2"));
    assert_eq!(o.status.code(), Some(2));
    // leaves the monoid
    let o = run_path(&["derive", "--ray", "1", "--root", "-1,1", "--apply", "1,0"], &fixture("example2"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_passes_on_fixtures() {
    for name in ["example2", "example5", "a2", "cusp"] {
        let o = run_path(&["check"], &fixture(name));
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}
