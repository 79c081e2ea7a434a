use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertrees"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn enumerate_three() {
    let text = stdout(&["enumerate", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "count 4");
    assert_eq!(lines[0], "{1,2,3}");
}

#[test]
fn enumerate_variants_json() {
    let text = stdout(&["enumerate", "3", "--variant", "rooted", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["variant"], "rooted");
    let hollow = stdout(&["enumerate", "3", "--variant", "hollow"]);
    assert!(hollow.ends_with("count 3\n"));
}

#[test]
fn character_tables() {
    assert_eq!(
        stdout(&["character-table", "3", "--source", "lefschetz"]),
        "class,value\n1+1+1,2\n2+1,0\n3,-1\n"
    );
    for n in ["2", "3", "4", "5"] {
        assert_eq!(
            stdout(&["character-table", n, "--source", "lefschetz"]),
            stdout(&["character-table", n, "--source", "formula"]),
            "n = {n}"
        );
    }
}

#[test]
fn homology_and_whitney() {
    assert_eq!(stdout(&["homology", "4"]), "{\"1\":9}\n");
    assert_eq!(stdout(&["homology", "3", "--sign", "reversed"]), "{\"0\":2}\n");
    assert_eq!(stdout(&["whitney", "4"]), "{\"1\":12,\"2\":20}\n");
    assert_eq!(stdout(&["whitney", "3", "--format", "csv"]), "rank,dimension\n1,3\n");
}

#[test]
fn series_printing() {
    assert_eq!(stdout(&["series", "Perm", "--degree", "2"]), "p1 + p1^2\n");
    assert_eq!(stdout(&["series", "Comm", "--degree", "2"]), "p1 + 1/2*p1^2 + 1/2*p2\n");
    let json = stdout(&["series", "SigmaPreLie", "--degree", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn poset_export() {
    let text = stdout(&["poset", "3"]);
    let (index, hasse) = text.split_once("\n\n").unwrap();
    assert_eq!(index.lines().count(), 5);
    assert_eq!(hasse.lines().next(), Some("child,parent"));
    assert_eq!(hasse.lines().count(), 4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4");
    stdout(&["poset", "4", "--out", path.to_str().unwrap()]);
    let index = std::fs::read_to_string(path.join("index.csv")).unwrap();
    assert_eq!(index.lines().count(), 30);
    assert!(std::fs::read_to_string(path.join("hasse.csv"))
        .unwrap()
        .starts_with("child,parent\n"));
}

#[test]
fn verify_subset() {
    let text = stdout(&["verify", "--only", "dissymmetry", "--nmax", "4"]);
    assert_eq!(text.lines().count(), 10);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["identity"], "dissymmetry");
    }
    assert_eq!(stdout(&["verify", "--only", "1", "--nmax", "4"]), text);
}

#[test]
fn deterministic_output() {
    let a = stdout(&["verify", "--nmax", "4", "--degree", "5"]);
    let b = stdout(&["verify", "--nmax", "4", "--degree", "5", "--threads", "1"]);
    assert_eq!(a, b);
    assert_eq!(stdout(&["enumerate", "5"]), stdout(&["enumerate", "5"]));
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    assert!(stdout(&["character-table", "4", "--out", path.to_str().unwrap()]).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("class,value\n1+1+1+1,9\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["homology", "3", "--bogus"]), 2);
    assert_eq!(code(&["series", "Nope"]), 2);
    assert_eq!(code(&["homology", "0"]), 2);
    assert_eq!(code(&["verify", "--only", "nope"]), 2);
    assert_eq!(code(&["homology", "6"]), 3);
    assert_eq!(code(&["verify", "--nmax", "6"]), 3);
    assert_eq!(code(&["enumerate", "7"]), 3);
    assert_eq!(code(&["series", "HAL", "--degree", "40"]), 3);
}

#[test]
fn thread_env_is_checked() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypertrees"))
        .args(["homology", "3"])
        .env("HYPERTREES_THREADS", "x")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_hypertrees"))
        .args(["homology", "3"])
        .env("HYPERTREES_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}
