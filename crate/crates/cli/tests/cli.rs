use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is one JSON object");
    v["error"].as_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let first = lrb(&["construct", "free", "--letters", "a,b,c"]);
    let second = lrb(&["construct", "free", "--letters", "a,b,c"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let file = write(&dir, "f3.json", &stdout(&first));
    let product = dir.path().join("product.json");
    let o = lrb(&[
        "construct",
        "product",
        "--left",
        &file,
        "--right",
        &file,
        "--out",
        p(&product),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("size 256"));

    // A generated submonoid written back out parses to the same bytes.
    let sub = lrb(&[
        "construct",
        "submonoid",
        "--monoid",
        &file,
        "--gens",
        "ab,c",
    ]);
    assert!(sub.status.success());
    let sub_file = write(&dir, "sub.json", &stdout(&sub));
    let again = lrb(&[
        "construct",
        "submonoid",
        "--monoid",
        &sub_file,
        "--gens",
        "ab,c",
    ]);
    assert_eq!(stdout(&again), stdout(&sub));
}

#[test]
fn every_construction_kind_runs() {
    let dir = TempDir::new().unwrap();
    let graph = write(
        &dir,
        "g.json",
        r#"{"vertices": ["x", "y", "z", "w"], "edges": [["x","y"],["y","z"],["z","w"],["w","x"]]}"#,
    );
    let covectors = write(&dir, "c.json", r#"["0", "+", "-"]"#);
    let normals = write(
        &dir,
        "n.json",
        r#"{"dim": 2, "normals": [["0","1"],["1","-1"],["1","1"]]}"#,
    );
    let quiver = write(
        &dir,
        "q.json",
        r#"{"vertices": ["1","2","3"], "arrows": [["1","2","a"],["2","3","b"]], "order": ["1","2","3"]}"#,
    );
    let lattice = write(
        &dir,
        "l.json",
        r#"{"size": 3, "leq": [[0,1],[1,2]], "names": ["0","1","2"]}"#,
    );
    let cases: Vec<(Vec<&str>, usize)> = vec![
        (vec!["fpc", "--graph", &graph], 25),
        (vec!["covectors", "--covectors", &covectors], 3),
        (vec!["arrangement", "--normals", &normals], 13),
        (vec!["complex-sign", "--n", "2"], 25),
        (vec!["quiver", "--quiver", &quiver], 6),
        (vec!["rhodes", "--lattice", &lattice], 4),
        (vec!["kr", "--lattice", &lattice, "--gens", "a=1,b=0"], 4),
    ];
    for (args, size) in cases {
        let mut full = vec!["construct"];
        full.extend(&args);
        let o = lrb(&full);
        assert!(
            o.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["size"].as_u64(), Some(size as u64), "{args:?}");
    }
}

#[test]
fn analyze_writes_artifacts() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("s.json");
    assert!(
        lrb(&["construct", "complex-sign", "--n", "1", "--out", p(&m)])
            .status
            .success()
    );
    let out = dir.path().join("out");
    let o = lrb(&["analyze", p(&m), "--out-dir", p(&out), "--field", "fp:3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for file in [
        "ext.csv",
        "quiver.dot",
        "gldim.txt",
        "leray.txt",
        "bounds.json",
    ] {
        assert!(out.join(file).exists(), "{file}");
    }
    // Support lattice i < + < 0: Ext from bottom to top sits in degree 2.
    let csv = fs::read_to_string(out.join("ext.csv")).unwrap();
    assert!(csv.starts_with("X,Y,n,dim\n"));
    assert!(csv.contains("B·i,B·0,2,1\n"), "{csv}");
    let bounds: Value =
        serde_json::from_str(&fs::read_to_string(out.join("bounds.json")).unwrap()).unwrap();
    assert_eq!(bounds["global_dimension"], 2);
    assert_eq!(bounds["field"], "fp:3");

    let gldim = lrb(&["analyze", p(&m), "--gldim"]);
    assert_eq!(stdout(&gldim), "2\n");
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("f2.json");
    assert!(
        lrb(&["construct", "free", "--letters", "a,b", "--out", p(&m)])
            .status
            .success()
    );
    let o = lrb(&["verify", p(&m)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["global_dimension"], 1);
    assert_eq!(report["checks"]["oracle"]["mismatches"], 0);

    let bad = write(
        &dir,
        "bad.json",
        r#"{"size": 2, "identity": 0, "table": [[0, 1], [1, 0]]}"#,
    );
    let o = lrb(&["verify", &bad, "--axioms"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["checks"]["axioms"]["error"], "NotIdempotent");
    let o = lrb(&["verify", &bad, "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "NotIdempotent");

    let o = lrb(&["verify", p(&m), "--geometric"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_are_json_with_stable_exit_codes() {
    let dir = TempDir::new().unwrap();
    let o = lrb(&[
        "construct",
        "free",
        "--letters",
        "a,b,c,d,e,f,g",
        "--cap",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "AlphabetTooLarge");

    let o = lrb(&["analyze", "/nonexistent/monoid.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "Io");

    let o = lrb(&["construct", "free"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "InvalidInput");

    let o = lrb(&["analyze", "x.json", "--field", "fp:4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "Usage");

    let cyclic = write(
        &dir,
        "q.json",
        r#"{"vertices": ["1","2"], "arrows": [["1","2","a"],["2","1","b"]], "order": ["1","2"]}"#,
    );
    let o = lrb(&["construct", "quiver", "--quiver", &cyclic]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "NotAcyclic");

    let not_closed = write(&dir, "c.json", r#"["00", "+0", "0+"]"#);
    let o = lrb(&["construct", "covectors", "--covectors", &not_closed]);
    assert_eq!(error_kind(&o), "NotClosed");

    let garbage = write(&dir, "g.json", "{ not json");
    let o = lrb(&["verify", &garbage]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "InvalidInput");

    let big = dir.path().join("f4.json");
    assert!(lrb(&[
        "construct",
        "free",
        "--letters",
        "a,b,c,d",
        "--out",
        p(&big)
    ])
    .status
    .success());
    let o = lrb(&["analyze", p(&big), "--leray", "--gldim"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "TooManyVertices");
    assert_eq!(stdout(&o), "# gldim.txt\n1\n");

    assert_eq!(lrb(&["--help"]).status.code(), Some(0));
    assert_eq!(lrb(&["--version"]).status.code(), Some(0));
}
