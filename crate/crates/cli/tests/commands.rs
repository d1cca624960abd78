use std::process::{Command, Output};

fn cubewalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubewalk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TABLE_A: &str = "[13,10,9,14,3,11,1,12,15,4,7,5,2,6,0,8]";

#[test]
fn func_check_reports_dssc() {
    let o = cubewalk(&["func", "check", "--table", TABLE_A]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("doubly stochastic: yes"));
    assert!(text.contains("strongly connected: yes"));
    assert!(text.contains("balance: totally balanced"));
}

#[test]
fn func_check_fails_on_a_disconnected_map() {
    // The identity keeps every vertex in place.
    let o = cubewalk(&["func", "check", "--table", "[0,1,2,3]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("strongly connected: no"));
    assert!(stdout(&o).contains("removed cycles: none"));
    assert_eq!(cubewalk(&["func", "check", "--table", "[0,1,2]"]).status.code(), Some(2));
    let o = cubewalk(&["func", "check", "--table", "[0,1,2,3]", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["doubly_stochastic"], true);
    assert_eq!(v["strongly_connected"], false);
}

#[test]
fn func_build_inverts_check() {
    let o = cubewalk(&["func", "build", "--inline", "2,3,4,1,4,3,2,3,1,4,1,3,2,1,2,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), TABLE_A);
}

#[test]
fn func_build_reads_words_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    std::fs::write(&path, "0,1,3,2\n").unwrap();
    let o = cubewalk(&["func", "build", "--code", path.to_str().unwrap(), "--words"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "[2,0,3,1]");
}

#[test]
fn empty_rand_output() {
    let o = cubewalk(&["rand", "--profile", "a", "--seed-x", "0", "--seed-s", "0", "--bytes", "0"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn rand_requires_seeds_and_a_destination() {
    assert!(!cubewalk(&["rand", "--profile", "a", "--bytes", "16"]).status.success());
    let o = cubewalk(&["rand", "--profile", "a", "--seed-x", "0", "--seed-s", "0", "--bytes", "16"]);
    assert!(!o.status.success());
    assert!(o.stdout.is_empty());
    let o = cubewalk(&["rand", "--profile", "a", "--seed-x", "0", "--seed-s", "0", "--bytes", "16", "--binary-stdout"]);
    assert!(o.status.success());
    assert_eq!(o.stdout.len(), 16);
}

#[test]
fn rand_table_needs_b() {
    let o =
        cubewalk(&["rand", "--table", TABLE_A, "--seed-x", "0", "--seed-s", "0", "--bytes", "4", "--binary-stdout"]);
    assert!(!o.status.success());
    let o = cubewalk(&[
        "rand",
        "--table",
        TABLE_A,
        "--b",
        "32",
        "--seed-x",
        "0",
        "--seed-s",
        "0",
        "--bytes",
        "4",
        "--binary-stdout",
    ]);
    let p = cubewalk(&["rand", "--profile", "a", "--seed-x", "0", "--seed-s", "0", "--bytes", "4", "--binary-stdout"]);
    assert_eq!(o.stdout, p.stdout);
}

#[test]
fn gray_count_six() {
    let o = cubewalk(&["gray", "count", "--n", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("decompositions, l = 10: 3003"));
}

#[test]
fn gray_gen_four_is_totally_balanced() {
    let o = cubewalk(&["gray", "gen", "--n", "4", "--totally-balanced"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2,3,4,1,4,3,2,3,1,4,1,3,2,1,2,4");
}

#[test]
fn repeated_runs_are_identical() {
    let cases: [&[&str]; 4] = [
        &["gray", "gen", "--n", "6", "--limit", "500", "--jobs", "3"],
        &["mix", "--profile", "b", "--sweep"],
        &["stats", "--profile", "a", "--bits", "20000", "--json"],
        &["oracle", "verify", "--n", "3"],
    ];
    for args in cases {
        let a = cubewalk(args);
        let b = cubewalk(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status, b.status, "{args:?}");
    }
    let single = cubewalk(&["gray", "gen", "--n", "6", "--limit", "500"]);
    assert_eq!(single.stdout, cubewalk(cases[0]).stdout);
}

#[test]
fn stats_reads_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.bin");
    let p = path.to_str().unwrap();
    let o = cubewalk(&["rand", "--profile", "e", "--seed-x", "0", "--seed-s", "1", "--bytes", "20000", "--out", p]);
    assert!(o.status.success());
    let o = cubewalk(&["stats", "--in", p]);
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS") || l.contains("FAIL")).count(), 4);
    let short = dir.path().join("short.bin");
    std::fs::write(&short, [0u8; 10]).unwrap();
    assert_eq!(cubewalk(&["stats", "--in", short.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn oracle_rejects_large_cubes() {
    assert!(cubewalk(&["oracle", "verify", "--n", "4"]).status.success());
    assert!(!cubewalk(&["oracle", "verify", "--n", "5"]).status.success());
}

#[test]
fn mix_reports_a_mixing_time() {
    let o = cubewalk(&["mix", "--table", TABLE_A, "--epsilon", "1e-4", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["t"], 20);
}
