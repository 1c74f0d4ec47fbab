// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn mms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mms"))
        .args(args)
        .output()
        .expect("run mms")
}

fn mms_on(file: &str, args: &[&str]) -> Output {
    let path = data(file);
    let mut all = vec![args[0], path.to_str().unwrap()];
    all.extend(&args[1..]);
    mms(&all)
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

#[test]
fn winners_report() {
    let out = mms_on("party_list.toml", &["winners"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        r#"k = 3
winners = ["a1", "a2", "b1"]
winner_indices = [0, 1, 3]
round_values = ["4/1", "2/1", "2/1"]
round_ties = [["a1", "a2", "a3"], ["a2", "a3", "b1", "b2"], ["b1", "b2"]]
flow_solves = 14
"#
    );
}

#[test]
fn k_flag_overrides_file() {
    let out = mms_on("party_list.toml", &["winners", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with("k = 5\nwinners = [\"a1\", \"a2\", \"b1\", \"a3\", \"b2\"]\n"),
        "{text}"
    );
}

#[test]
fn maximin_reports() {
    let out = mms_on("unbalanced.toml", &["maximin", "--subset", "a,b"]);
    assert_eq!(
        stdout(&out),
        "subset = [\"a\", \"b\"]\nvalue = \"1/1\"\nsurvivors = [\"b\"]\nsurviving_voters = [3]\niterations = 2\n"
    );
    let out = mms_on("single.toml", &["maximin", "--subset", "c"]);
    assert!(stdout(&out).contains("value = \"7/1\"\n"));
    let out = mms_on("single.toml", &["maximin", "--subset", "d"]);
    assert!(stdout(&out).contains("value = \"0/1\"\n"));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_name_exits_3() {
    let out = mms_on("unbalanced.toml", &["maximin", "--subset", "a,zed"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zed"));
}

#[test]
fn malformed_file_exits_2() {
    let out = mms_on("malformed.toml", &["winners"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_modes() {
    let out = mms_on("party_list.toml", &["verify", "--mode", "pjr"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("status = \"pass\""));

    let out = mms_on("unbalanced.toml", &["verify", "--mode", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("status = \"pass\""));

    let out = mms_on("party_list.toml", &["verify", "--mode", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("checks = 12\n"));

    let out = mms_on("party_list.toml", &["verify", "--mode", "dhondt"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mms_seats = [2, 1]\ndhondt_seats = [2, 1]\n"));
}

#[test]
fn checker_bound_exits_4() {
    let out = mms_on("thirteen.toml", &["verify", "--mode", "pjr"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("12"));
}

#[test]
fn verification_failure_exits_5() {
    // List A deserves both seats but only has one candidate.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.toml");
    std::fs::write(
        &path,
        "candidates = [\"a\", \"b\"]\nballots = [[0], [0], [0], [0], [0], [1]]\nk = 2\n",
    )
    .unwrap();
    let out = mms(&["verify", path.to_str().unwrap(), "--mode", "dhondt"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).contains("status = \"fail\""));
}

#[test]
fn thread_count_does_not_change_output() {
    let one = mms_on("party_list.toml", &["winners", "--threads", "1"]);
    let four = mms_on("party_list.toml", &["winners", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn fuzz_is_seeded() {
    let a = mms(&["fuzz", "--mode", "oracle", "--seed", "3", "--cases", "20"]);
    let b = mms(&["fuzz", "--mode", "oracle", "--seed", "3", "--cases", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
