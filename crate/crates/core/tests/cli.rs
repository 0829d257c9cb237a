use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_range-lis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fig1_file(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "fig1.json",
        &json!({
            "sequence": [3, 5, 7, 8, 10, 2, 4, 1, 6, 9],
            "colors": ["yellow", "orange", "yellow", "orange", "yellow", "red", "red", "orange", "red", "red"],
            "queries": [
                {"id": "all", "x1": 1, "x2": 10},
                {"id": 7, "x1": 6, "x2": 9, "y1": 1, "y2": 6}
            ]
        }),
    )
}

fn gen(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut args = vec!["gen", "--out", s(&p)];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["--n", "300", "--m", "40", "--colors", "5", "--distribution", "heavy-skew", "--seed", "9"];
    let a = std::fs::read(gen(&dir, "a.json", &args)).unwrap();
    let b = std::fs::read(gen(&dir, "b.json", &args)).unwrap();
    assert_eq!(a, b);
    let c = std::fs::read(gen(&dir, "c.json", &["--n", "300", "--m", "40", "--seed", "10"])).unwrap();
    assert_ne!(a, c);
}

#[test]
fn solve_fig1() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    let out = lines(&run(&["solve", s(&f)]));
    assert_eq!(out.len(), 2);
    assert_eq!(out[0]["id"], "all");
    assert_eq!(out[0]["length"], 5);
    assert_eq!(out[1]["id"], 7);
    assert!(out[0]["elapsed_us"].is_number());

    let out = lines(&run(&["solve", s(&f), "--technique", "small", "--tau", "10"]));
    assert_eq!(out[0]["indices"], json!([1, 2, 3, 4, 5]));
    assert_eq!(out[0]["technique"], "small");

    let one_d = write(
        &dir,
        "fig1_1d.json",
        &json!({
            "sequence": [3, 5, 7, 8, 10, 2, 4, 1, 6, 9],
            "colors": ["yellow", "orange", "yellow", "orange", "yellow", "red", "red", "orange", "red", "red"],
            "queries": [{"id": 0, "x1": 1, "x2": 10}]
        }),
    );
    let out = lines(&run(&["solve", s(&one_d), "--problem", "colored1d"]));
    assert_eq!(out.len(), 1);
    assert_eq!(out[0]["length"], 4);
    assert_eq!(out[0]["color"], "red");
}

#[test]
fn colored1d_rejects_value_bounds() {
    let dir = TempDir::new().unwrap();
    let o = run(&["solve", s(&fig1_file(&dir)), "--problem", "colored1d", "--technique", "light", "--delta", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn oracle_technique_agrees() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "i.json", &["--n", "400", "--m", "60", "--colors", "8", "--distribution", "heavy-skew", "--seed", "3"]);
    for problem in ["2d", "colored2d"] {
        let a = lines(&run(&["solve", s(&f), "--problem", problem]));
        let b = lines(&run(&["solve", s(&f), "--problem", problem, "--technique", "oracle"]));
        assert_eq!(a.len(), 60);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x["id"], y["id"]);
            assert_eq!(x["length"], y["length"]);
        }
        assert!(b.iter().all(|r| r["technique"] == "oracle" || r["length"] == 0));
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"sequence\": [1, 2").unwrap();
    assert_eq!(run(&["solve", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/file.json"]).status.code(), Some(2));

    let oob = write(&dir, "oob.json", &json!({"sequence": [1, 2], "queries": [{"id": 0, "x1": 1, "x2": 3}]}));
    assert_eq!(run(&["solve", s(&oob)]).status.code(), Some(2));

    let dup = write(&dir, "dup.json", &json!({"sequence": [2, 1, 2], "queries": [{"id": 0, "x1": 1, "x2": 3}]}));
    assert_eq!(run(&["solve", s(&dup)]).status.code(), Some(3));
    let o = run(&["solve", s(&dup), "--break-ties-by-index"]);
    assert!(o.status.success());
    assert_eq!(lines(&o)[0]["length"], 2);

    let plain = write(&dir, "plain.json", &json!({"sequence": [1, 2], "queries": []}));
    assert_eq!(run(&["solve", s(&plain), "--problem", "colored2d"]).status.code(), Some(3));
    assert_eq!(run(&["solve", s(&plain), "--problem", "3d"]).status.code(), Some(2));
    assert_eq!(run(&["solve", s(&plain), "--tau", "0"]).status.code(), Some(3));
}

#[test]
fn verify_exact_configurations() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "v.json", &["--n", "150", "--m", "40", "--colors", "6", "--seed", "1"]);
    for args in [
        vec!["--technique", "small", "--tau", "150"],
        vec!["--technique", "large", "--tau", "1"],
        vec!["--problem", "colored2d", "--technique", "light", "--delta", "150"],
        vec![],
    ] {
        let mut all = vec!["verify", s(&f), "--trials", "2"];
        all.extend(args.iter().copied());
        let o = run(&all);
        let text = String::from_utf8_lossy(&o.stdout);
        assert!(o.status.success(), "{args:?}: {text}");
        assert!(text.contains("0 hard mismatches"), "{text}");
        assert!(text.contains("0 unsound"), "{text}");
    }
}

#[test]
fn bench_csv() {
    let o = run(&["bench", "--sizes", "64,128", "--repetitions", "1"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,m,build_ms,query_ms,k");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("64,64,"));
    assert_eq!(run(&["bench", "--sizes", "128,64"]).status.code(), Some(2));
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, "w.json", &["--n", "500", "--m", "50", "--colors", "10", "--distribution", "heavy-skew", "--seed", "4"]);
    for problem in ["2d", "colored1d", "colored2d"] {
        let f1 = if problem == "colored1d" {
            gen(&dir, "w1.json", &["--n", "500", "--m", "50", "--colors", "10", "--query-kind", "1d", "--seed", "4"])
        } else {
            f.clone()
        };
        let strip = |o: Output| -> Vec<Value> {
            lines(&o)
                .into_iter()
                .map(|mut r| {
                    r.as_object_mut().unwrap().remove("elapsed_us");
                    r
                })
                .collect()
        };
        let a = strip(run(&["solve", s(&f1), "--problem", problem, "--workers", "1", "--seed", "5"]));
        let b = strip(run(&["solve", s(&f1), "--problem", problem, "--workers", "3", "--seed", "5"]));
        assert_eq!(a, b, "{problem}");
    }
}
