use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_repcolor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn c5(dir: &Path) -> PathBuf {
    write(dir, "c5.col", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn build_rep_counts() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    let out = run(&["build-rep", s(&g)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "arcs: 5\nedges: 5\n");

    let k4 = write(dir.path(), "k4.col", "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let file = dir.path().join("rep.json");
    let out = run(&["build-rep", s(&k4), "--out", s(&file)]);
    assert!(out.status.success());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(rep["arcs"].as_array().unwrap().len(), 0);

    let bad = write(dir.path(), "bad.ord", "1 2 2 4 5\n");
    let out = run(&["build-rep", s(&g), "--ordering", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.ord"));
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "broken.col", "p edge 3 1\ne 1 9\n");
    let out = run(&["classify", s(&g)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("broken.col") && err.contains("line 2"), "{err}");
}

#[test]
fn export_lp_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let lp = dir.path().join("p3.lp");
    let out = run(&["export-lp", s(&p3), "--out", s(&lp)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&lp).unwrap();
    assert!(text.contains("x_1_3"));
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("p3.lp.json")).unwrap())
            .unwrap();
    assert_eq!(side["objective_offset"], "-3");

    let out = run(&["export-lp", s(&p3), "--problem", "maxcol", "--out", s(&lp)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--weights"));
}

#[test]
fn export_lp_rejects_inconsistent_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    let rho = write(dir.path(), "rho.txt", "3 1\n");
    // vertex 1 is uncolored and precedes the only member of color 1
    let ord = write(dir.path(), "ord.txt", "1 2 3 4 5\n");
    let lp = dir.path().join("x.lp");
    let out = run(&[
        "export-lp",
        s(&g),
        "--problem",
        "preext",
        "--precoloring",
        s(&rho),
        "--ordering",
        s(&ord),
        "--out",
        s(&lp),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("vertex 0") && err.contains("color 1"), "{err}");
    assert!(!lp.exists());
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--format", "json", "classify", s(&c5(dir.path()))]);
    let r = json(&out);
    assert_eq!(r["results"]["alpha_le_2"], true);
    assert_eq!(r["results"]["co_kite_free"], true);

    let s3 = write(dir.path(), "s3.col", "p edge 3 0\n");
    let r = json(&run(&["--format", "json", "classify", s(&s3)]));
    assert_eq!(r["results"]["alpha_le_2"], false);
    assert_eq!(r["results"]["co_K4_diamond_paw_free"], true);
    assert_eq!(r["results"]["decomposition"]["triples"].as_array().unwrap().len(), 1);

    // complement of the kite: the kite itself appears in the complement
    let cokite = write(
        dir.path(),
        "cokite.col",
        "p edge 5 5\ne 1 4\ne 1 5\ne 2 4\ne 2 5\ne 3 5\n",
    );
    let r = json(&run(&["--format", "json", "classify", s(&cokite)]));
    assert_eq!(r["results"]["co_kite_free"], false);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    for check in ["coltostab", "match-subset", "edmonds-complete", "copaw-complete", "quasiline-complete"] {
        let out = run(&["verify", s(&g), "--check", check]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
    let s3 = write(dir.path(), "s3.col", "p edge 3 0\n");
    let out = run(&["--format", "json", "verify", s(&s3), "--check", "edmonds-complete"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["results"]["result"], false);

    // enumeration beyond the caps is inconclusive, never a pass
    let out = run(&["--caps", "enum-arcs=2,enum-vertices=2", "verify", s(&g), "--check", "coltostab"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_preext_and_facet() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    let rho = write(dir.path(), "rho.txt", "1 1\n3 1\n");
    let out = run(&["verify", s(&g), "--check", "preext", "--precoloring", s(&rho)]);
    assert_eq!(out.status.code(), Some(0));
    let set = write(dir.path(), "set.txt", "1,2,3,4,5\n");
    let out = run(&["verify", s(&g), "--check", "facet", "--set", s(&set)]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--format", "json", "facet", s(&g), "--set", s(&set)]);
    let r = json(&out);
    assert_eq!(r["results"]["is_facet"], true);
    assert_eq!(r["results"]["sufficient_condition"], "odd_hole");
    assert_eq!(r["results"]["inequality"]["rhs"], "2");
}

#[test]
fn solve_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    let m = json(&run(&["--format", "json", "solve", s(&g), "--method", "matching"]));
    let e = json(&run(&["--format", "json", "solve", s(&g), "--method", "exact"]));
    assert_eq!(m["results"]["colors_used"], 3);
    assert_eq!(e["results"]["colors_used"], 3);

    let w = write(dir.path(), "w.txt", "1 3\n2 1\n3 3\n4 1\n5 2\n");
    let r = json(&run(&["--format", "json", "solve", s(&g), "--problem", "maxcol", "--weights", s(&w)]));
    // {1,3}, {2,4}, {5}: 3 + 1 + 2
    assert_eq!(r["results"]["objective"], "6");
    let out = run(&["solve", s(&g), "--problem", "maxcol", "--weights", s(&w), "--method", "matching"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn separate_half_point() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    let point = write(
        dir.path(),
        "half.json",
        r#"{"1,3":"1/2","1,4":"1/2","2,4":"1/2","2,5":"1/2","3,5":"1/2"}"#,
    );
    let r = json(&run(&["--format", "json", "separate", s(&g), "--point", s(&point)]));
    assert_eq!(r["results"]["violated"]["family"], "odd-set");
    assert_eq!(r["results"]["violation"], "1/2");

    let zero = write(dir.path(), "zero.json", r#"{"1,3":0,"1,4":0,"2,4":0,"2,5":0,"3,5":0}"#);
    let out = run(&["separate", s(&g), "--point", s(&zero)]);
    assert_eq!(stdout(&out), "none\n");
}

#[test]
fn corpus_counts_and_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--format", "json", "corpus", "--max-n", "4", "--out", s(dir.path())]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["results"]["per_n"][3], 6);
    assert_eq!(r["results"]["per_n"][2], 2);
    assert!(dir.path().join("c5.col").exists());
    assert!(dir.path().join("n4_0006.col").exists());
    assert!(!dir.path().join("n4_0007.col").exists());
    let out = run(&["corpus", "--max-n", "8", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5(dir.path());
    let args = ["--format", "json", "--seed", "7", "verify", s(&g), "--check", "edmonds-complete", "--mode", "probe", "--k", "20"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}
