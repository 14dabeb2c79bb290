use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn amoduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amoduli")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

/// The two-branch special curve system, with its last relation replaced.
fn write_system(dir: &Path, name: &str, last: &str) -> String {
    let o = amoduli(&["curve", "special", "--n", "2", "--s", "1", "--a", "2"]);
    let mut sys = json_of(&o)["system"].clone();
    let rels = sys["relations"].as_array_mut().unwrap();
    *rels.last_mut().unwrap() = Value::from(last);
    let p = dir.join(name);
    std::fs::write(&p, sys.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn hh_cusp_negative_hh1_vanishes() {
    let o = amoduli(&["hh", "--n", "1", "--g", "1", "--w", "", "--i-max", "2", "--t-min", "-8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("i,t,dim_cochain,dim_cocycle,dim_coboundary,dim_HH"));
    let rows: Vec<Vec<i64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3 * 9);
    for r in &rows {
        if r[0] == 1 && r[1] < 0 {
            assert_eq!(r[5], 0, "HH^1 at t = {}", r[1]);
        }
        assert_eq!(r[5], r[3] - r[4]);
    }
    let hh2: i64 = rows.iter().filter(|r| r[0] == 2 && r[1] < 0).map(|r| r[5]).sum();
    assert_eq!(hh2, 2);
}

#[test]
fn hilbert_head() {
    let o = amoduli(&["genus1", "hilbert", "--u", "1", "--v", "1", "--nmax", "7"]);
    assert!(o.status.success());
    let dims: Vec<u64> = serde_json::from_value(json_of(&o)["dims"].clone()).unwrap();
    assert_eq!(dims, vec![1, 0, 1, 1, 2, 1, 3, 2]);
}

#[test]
fn hilbert_csv() {
    let o = amoduli(&["genus1", "hilbert", "--u", "1", "--v", "1", "--nmax", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,dim\n0,1\n1,0\n2,1\n3,1\n");
}

#[test]
fn compare_veronese_passes() {
    let o = amoduli(&["genus1", "compare", "--u", "2", "--v", "1", "--nmax", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_of(&o);
    assert_eq!(j["verdict"], "PASS");
    assert_eq!(j["regime"]["kind"], "veronese");
}

#[test]
fn sampled_trivial_structure_normalizes_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let o = amoduli(&[
        "ainf",
        "sample",
        "--n",
        "1",
        "--order",
        "5",
        "--seed",
        "11",
        "--trivial",
        "--out",
        s.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(dir.path().join("s.manifest.json").exists());
    let o = amoduli(&["ainf", "normalize", "--input", s.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json_of(&o)["trivial"], true);
}

#[test]
fn equivalence_of_a_structure_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("r.json");
    let s = s.to_str().unwrap();
    assert!(amoduli(&["ainf", "sample", "--n", "2", "--w", "1,1", "--order", "5", "--seed", "7", "--out", s])
        .status
        .success());
    let o = amoduli(&["ainf", "equiv", "--input", s, "--other", s]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["equivalent"], true);
    let o = amoduli(&["ainf", "extend", "--input", s]);
    assert_eq!(json_of(&o)["status"], "extended");
}

#[test]
fn tangent_golden() {
    let o = amoduli(&["ainf", "tangent", "--n", "2", "--g", "2", "--order", "7", "--format", "csv"]);
    assert_eq!(stdout(&o), "k,dim_HH2\n3,2\n4,4\n5,2\n6,2\n7,0\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_system(dir.path(), "good.json", "h1*hS2 - 2*f1^2");
    let bad = write_system(dir.path(), "bad.json", "h1*hS2 - 3*f1^2");
    assert_eq!(amoduli(&["poly", "closure", "--input", &good]).status.code(), Some(0));
    let o = amoduli(&["poly", "closure", "--input", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["verdict"], "FAIL");
    assert_eq!(amoduli(&["hh", "--n", "2", "--w", "1,x"]).status.code(), Some(2));
    assert_eq!(amoduli(&["genus1", "transition", "--a12", "0"]).status.code(), Some(2));
    assert_eq!(amoduli(&["curve", "krichever", "--n", "1", "--s", "1", "--depth", "3"]).status.code(), Some(2));
    assert_eq!(amoduli(&["no-such-command"]).status.code(), Some(2));
    let o = amoduli(&["ainf", "normalize", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn glue_two_lines() {
    let line = r#"{"n":1,"S":[],"a":[]}"#;
    let o = amoduli(&["curve", "glue", "--left", line, "--right", line, "--q-left", "1:0", "--q-right", "1:0"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_of(&o);
    assert_eq!(j["report"]["genus"], 0);
    assert_eq!(j["report"]["branches"], 2);
}

#[test]
fn symbolic_transition_certificate() {
    let o = amoduli(&["genus1", "transition", "--symbolic", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",0")));
}

#[test]
fn manifest_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let m = dir.path().join(format!("{name}.m"));
        let o = amoduli(&[
            "ainf",
            "sample",
            "--n",
            "1",
            "--order",
            "4",
            "--seed",
            "5",
            "--out",
            out.to_str().unwrap(),
            "--manifest",
            m.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let mut man: Value = serde_json::from_str(&std::fs::read_to_string(m).unwrap()).unwrap();
        man.as_object_mut().unwrap().remove("wall_time_ms");
        man.as_object_mut().unwrap().remove("output");
        (std::fs::read_to_string(out).unwrap(), man)
    };
    let (a, ma) = run("a.json");
    let (b, mb) = run("b.json");
    assert_eq!(a, b);
    assert_eq!(ma, mb);
    assert_eq!(ma["seed"], 5);
    assert_eq!(ma["subcommand"], "ainf sample");
}
