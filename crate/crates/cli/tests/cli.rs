use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matchkern"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn edges(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).map(str::to_string).collect()
}

fn c5(dir: &TempDir) -> PathBuf {
    write(dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n")
}

fn k35(dir: &TempDir) -> PathBuf {
    let mut body = String::new();
    for l in 0..3 {
        for r in 3..8 {
            body.push_str(&format!("{l} {r}\n"));
        }
    }
    write(dir, "k35.txt", &body)
}

/// CSV rows as field vectors, header included.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn column(rows: &[Vec<String>], name: &str, row: usize) -> String {
    let i = rows[0].iter().position(|h| h == name).expect("column");
    rows[row][i].clone()
}

#[test]
fn reduce_c5_with_degree_rules() {
    let dir = TempDir::new().unwrap();
    let (kernel, trace) = (dir.path().join("k"), dir.path().join("t"));
    let o = run(&["reduce", s(&c5(&dir)), "--rules", "degree", "-k", s(&kernel), "-t", s(&trace)]);
    assert_eq!(code(&o), 0);
    assert!(edges(&fs::read_to_string(&kernel).unwrap()).is_empty());
    assert!(fs::read_to_string(&trace).unwrap().contains("offset 2 0"));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(column(&rows, "cardinality_offset", 1), "2");
    assert_eq!(column(&rows, "tau", 1), "3");
}

#[test]
fn reduce_k35_with_all_rules() {
    let dir = TempDir::new().unwrap();
    let (kernel, trace) = (dir.path().join("k"), dir.path().join("t"));
    let o = run(&["reduce", s(&k35(&dir)), "--rules", "all", "-k", s(&kernel), "-t", s(&trace)]);
    assert_eq!(code(&o), 0);
    assert!(edges(&fs::read_to_string(&kernel).unwrap()).is_empty());
    assert!(fs::read_to_string(&trace).unwrap().contains("offset 3 0"));
}

#[test]
fn reduce_weighted_forest_exhaustively() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "tree.txt", "0 1 3\n1 2 8\n1 3 2\n3 4 6\n4 5 1\n");
    let kernel = dir.path().join("k");
    let report = dir.path().join("r.csv");
    for _ in 0..2 {
        let o = run(&["reduce", s(&input), "--weighted", "--mode", "exhaustive", "-k", s(&kernel), "--report", s(&report)]);
        assert_eq!(code(&o), 0);
    }
    assert!(edges(&fs::read_to_string(&kernel).unwrap()).is_empty());
    // appended rows share one header
    let rows = csv_rows(&fs::read_to_string(&report).unwrap());
    assert_eq!(rows.len(), 3);
    assert_eq!(column(&rows, "weight_offset", 2), "14");
}

#[test]
fn solve_small_instances() {
    let dir = TempDir::new().unwrap();
    let o = run(&["solve", s(&c5(&dir))]);
    assert_eq!(code(&o), 0);
    assert_eq!(edges(&stdout(&o)).len(), 2);

    let star = write(&dir, "star.txt", "0 1\n0 2\n0 3\n");
    assert_eq!(edges(&stdout(&run(&["solve", s(&star)]))).len(), 1);

    let pendant = write(&dir, "pendant.txt", "0 1 5\n1 2 6\n1 3 9\n1 4 3\n3 4 4\n");
    for mode in ["prescribed", "exhaustive"] {
        let o = run(&["solve", s(&pendant), "--weighted", "--mode", mode]);
        assert_eq!(code(&o), 0);
        let out = stdout(&o);
        assert!(out.contains("weight=10"), "{out}");
        assert_eq!(edges(&out), vec!["1 2 6", "3 4 4"]);
    }
}

#[test]
fn permuted_reduction_lifts_back() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "g.txt",
        "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n4 5\n5 6\n6 3\n6 7\n7 8\n8 9\n9 10\n10 8\n",
    );
    let (kernel, trace, km, out) = (
        dir.path().join("k"),
        dir.path().join("t"),
        dir.path().join("km"),
        dir.path().join("m"),
    );
    let o = run(&["reduce", s(&input), "--rules", "all", "--seed", "7", "-k", s(&kernel), "-t", s(&trace)]);
    assert_eq!(code(&o), 0);
    let o = run(&["solve", s(&kernel), "--rules", "degree", "-o", s(&km)]);
    assert_eq!(code(&o), 0);
    let o = run(&["lift", s(&input), "--seed", "7", "-t", s(&trace), "-m", s(&km), "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let lifted = edges(&fs::read_to_string(&out).unwrap());
    assert_eq!(lifted.len(), 5);

    // the same trace with the wrong seed does not replay
    let o = run(&["lift", s(&input), "--seed", "8", "-t", s(&trace), "-m", s(&km)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn stats_rows() {
    let dir = TempDir::new().unwrap();
    let forest = write(&dir, "forest.txt", "0 1\n1 2\n1 3\n4 5\n");
    let k4 = write(&dir, "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let o = run(&["stats", s(&forest), s(&k4), s(&k35(&dir))]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    let get = |name, row| column(&rows, name, row);
    assert_eq!((get("vertex_bound", 1), get("edge_bound", 1)), ("0".into(), "0".into()));
    assert_eq!((get("degree_n", 1), get("degree_m", 1)), ("0".into(), "0".into()));
    assert_eq!(get("k", 2), "3");
    assert_eq!((get("vertex_bound", 2), get("edge_bound", 2)), ("6".into(), "9".into()));
    assert_eq!((get("degree_n", 2), get("degree_m", 2)), ("4".into(), "6".into()));
    assert_eq!((get("two_tau", 3), get("all_n", 3)), ("6".into(), "0".into()));
    assert_eq!(get("prescribed_n", 3), "");
}

#[test]
fn bench_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = c5(&dir);
    let b = k35(&dir);
    let bench = |threads: &str| {
        let o = run(&["bench", s(&a), s(&b), "--repetitions", "3", "--seed", "11", "--no-timing", "--threads", threads]);
        assert_eq!(code(&o), 0);
        stdout(&o)
    };
    let first = bench("1");
    assert_eq!(first, bench("1"));
    assert_eq!(first, bench("4"));
    let rows = csv_rows(&first);
    // header, then 3 runs + mean + median per input
    assert_eq!(rows.len(), 1 + 2 * 5);
    assert_eq!(rows[4][1], "mean");
    assert_eq!(rows[5][1], "median");
    assert_eq!(column(&rows, "value", 9), "3.000");

    let o = run(&["bench", s(&a), "--repetitions", "3"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    assert!(!column(&rows, "reduce_ms", 1).is_empty());
}

#[test]
fn verify_passes_and_catches_injected_failures() {
    let o = run(&["verify", "--trials", "1000", "--max-n", "12", "--weighted"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 violations"));

    let dir = TempDir::new().unwrap();
    let o = run(&["verify", s(&c5(&dir)), "--trials", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("crown pass removed 0 vertices"));

    let o = run(&["verify", "--trials", "20", "--inject-failure"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn export_formats() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "1 2 3\n2 3 4\n");
    let o = run(&["export", s(&g), "--weighted"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("p edge 3 2\n"));
    let o = run(&["export", s(&g), "--weighted", "--format", "perfect"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("p edge 6 7\n"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "0 1\n1 x\n");
    let neg = write(&dir, "neg.txt", "0 1 -3\n");
    let k = dir.path().join("k");
    assert_eq!(code(&run(&["reduce", s(&bad), "-k", s(&k)])), 2);
    assert_eq!(code(&run(&["reduce", s(&neg), "--weighted", "-k", s(&k)])), 2);
    assert_eq!(code(&run(&["reduce", s(&c5(&dir)), "--weighted", "--rules", "all", "-k", s(&k)])), 1);
    assert_eq!(code(&run(&["reduce", s(&c5(&dir))])), 1);
    assert_eq!(code(&run(&["verify", "--max-n", "40"])), 1);
    assert_eq!(code(&run(&["--version"])), 0);

    let wrong = write(&dir, "m.txt", "0 2\n");
    let trace = dir.path().join("t");
    run(&["reduce", s(&c5(&dir)), "--rules", "crown", "-k", s(&k), "-t", s(&trace)]);
    assert_eq!(code(&run(&["lift", s(&c5(&dir)), "-t", s(&trace), "-m", s(&wrong)])), 2);
}
