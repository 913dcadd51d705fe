use std::process::{Command, Output};

use serde_json::Value;

fn necksum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_necksum")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = necksum(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    necksum(args).status.code().unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "coperiod", "--n", "4", "--k", "2", "--r", "2"]), "2\n");
    assert_eq!(stdout(&["count", "sbar", "--n", "8", "--k", "0", "--r", "0"]), "1\n");
    assert_eq!(stdout(&["count", "cvp", "--n", "5", "--k", "4"]), "1\n");
    assert_eq!(stdout(&["count", "necklaces", "--n", "6"]), "14\n");
    assert_eq!(stdout(&["count", "lplus", "--n", "6", "--k", "2"]), "3\n");
    assert_eq!(
        stdout(&["--format", "csv", "count", "lyndon", "--n", "5", "--k", "3"]),
        "family,n,k,r,q,count\nlyndon,5,3,,,2\n"
    );
    let v: Value = serde_json::from_str(&stdout(&[
        "count", "s", "--n", "6", "--k", "2", "--r", "1", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn enumerate_examples() {
    assert_eq!(stdout(&["enumerate", "lyndon", "--n", "5", "--k", "3"]), "00111\n01011\ncount: 2\n");
    assert_eq!(
        stdout(&["enumerate", "sbar", "--n", "6", "--k", "3", "--r", "2"]),
        "{1,2,5}\n{1,3,4}\n{3,5,6}\ncount: 3\n"
    );
    assert_eq!(
        stdout(&["enumerate", "sbar", "--n", "6", "--k", "3", "--r", "2", "--zero-based"]),
        "{1,2,5}\n{1,3,4}\n{0,3,5}\ncount: 3\n"
    );
    assert!(stdout(&["enumerate", "cvp", "--n", "6", "--k", "3"]).lines().any(|l| l == "651234"));
    assert_eq!(
        stdout(&["enumerate", "sbar", "--n", "6", "--k", "3", "--r", "2", "--format", "csv"]),
        "item\n1 2 5\n1 3 4\n3 5 6\n"
    );
    assert_eq!(
        stdout(&["enumerate", "multisets", "--n", "2", "--k", "2", "--r", "0", "--q", "3"]),
        "{1,1}\n{2,2}\ncount: 2\n"
    );
    assert_eq!(
        stdout(&[
            "enumerate",
            "qary-necklaces",
            "--n",
            "2",
            "--k",
            "2",
            "--r",
            "0",
            "--q",
            "3",
            "--format",
            "csv"
        ]),
        "item\n0 2\n1 1\n"
    );
    let v: Value =
        serde_json::from_str(&stdout(&["enumerate", "lplus", "--n", "6", "--k", "2", "--format", "json"]))
            .unwrap();
    assert_eq!(v["items"], serde_json::json!(["000011", "000101", "001"]));
}

#[test]
fn bijection_examples() {
    assert_eq!(stdout(&["bijection", "psi", "--perm", "54213", "--k", "3"]), "01011\n");
    assert_eq!(stdout(&["bijection", "psi-inverse", "--word", "100", "--n", "6", "--k", "2"]), "651234\n");
    assert_eq!(
        stdout(&["bijection", "affine", "--n", "6", "--set", "3,5,6", "--y", "1", "--z", "-1"]),
        "{1,2,4}\n"
    );
    assert_eq!(stdout(&["bijection", "affine", "--n", "6", "--set", "{3,5,6}"]), "{1,2,4}\n");
    let trace = stdout(&["bijection", "psi", "--perm", "54213", "--k", "3", "--trace"]);
    assert!(trace.contains("cycle: (1,5,3,2,4)"));
    assert!(trace.contains("threshold word: 10110"));
    let v: Value = serde_json::from_str(&stdout(&[
        "bijection",
        "psi-inverse",
        "--word",
        "10110",
        "--n",
        "5",
        "--k",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(v["permutation"], serde_json::json!([5, 4, 2, 1, 3]));
    assert_eq!(v["shifts"][0]["partial_sum"], "11011");
}

#[test]
fn table_defaults_and_small_bounds() {
    let golden1 = include_str!("golden/diff_grid.csv");
    let golden2 = include_str!("golden/diff_sum.csv");
    assert_eq!(stdout(&["table", "diff-grid", "--format", "csv"]), golden1);
    assert_eq!(stdout(&["table", "diff-sum", "--format", "csv"]), golden2);
    assert_eq!(stdout(&["table", "diff-grid", "--r", "2", "--max-m", "1", "--format", "csv"]), "0,1\n");
    let v: Value =
        serde_json::from_str(&stdout(&["table", "diff-sum", "--max-n", "3", "--format", "json"])).unwrap();
    assert_eq!(v["rows"][1], serde_json::json!({"n": 2, "values": [1, -1, 1]}));
    assert_eq!(code(&["table", "diff-grid", "--max-m", "0"]), 2);
}

#[test]
fn output_is_deterministic_with_any_job_count() {
    for args in [
        vec!["table", "diff-grid", "--format", "csv"],
        vec!["table", "diff-sum", "--format", "json"],
        vec!["scan-qary", "--max-n", "5", "--max-q", "3", "--format", "csv"],
    ] {
        let a = stdout(&args);
        let mut with_jobs = args.clone();
        with_jobs.extend(["--jobs", "3"]);
        assert_eq!(a, stdout(&with_jobs));
        assert_eq!(a, stdout(&args));
    }
}

#[test]
fn verify_suites() {
    for suite in ["theorem", "bijection", "s1cvp", "corollaries"] {
        let out = stdout(&["verify", suite, "--max-n", "9"]);
        assert!(out.ends_with("PASS\n"), "{suite}: {out}");
    }
    let v: Value =
        serde_json::from_str(&stdout(&["verify", "chan", "--max-n", "6", "--format", "json"])).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(code(&["verify", "theorem", "--max-n", "0"]), 2);
}

#[test]
fn scan_qary_output() {
    let csv = stdout(&["scan-qary", "--max-n", "8", "--max-q", "4", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,q,k,r,count_multisets,count_necklaces,equal,conditions"));
    let mut coprime_r0 = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (n, q): (usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        let gcd = (1..=n.min(q)).rev().find(|d| n % d == 0 && q % d == 0).unwrap();
        if gcd == 1 && f[3] == "0" {
            assert_eq!(f[6], "true", "{line}");
            coprime_r0 += 1;
        }
    }
    assert!(coprime_r0 > 0);
    assert!(csv.lines().any(|l| l == "2,3,all,0,6,6,true,-"));
    assert_eq!(code(&["scan-qary", "--max-n", "1", "--max-q", "3"]), 2);
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(code(&["count", "sbar", "--n", "4", "--k", "2"]), 2);
    assert_eq!(code(&["count", "sbar", "--n", "4", "--k", "2", "--r", "4"]), 2);
    assert_eq!(code(&["count", "bogus", "--n", "4"]), 2);
    assert_eq!(code(&["bijection", "psi", "--perm", "5x213", "--k", "3"]), 2);
    assert_eq!(code(&["bijection", "affine", "--n", "6", "--set", "3,5,6", "--y", "1"]), 2);
    // domain errors carry the error name
    let out = necksum(&["bijection", "psi", "--perm", "12", "--k", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT_CYCLIC"));
    let out = necksum(&["bijection", "psi-inverse", "--word", "0101", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT_IN_DOMAIN"));
    let out = necksum(&["bijection", "affine", "--n", "6", "--set", "2,4", "--y", "0", "--z", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Z_NOT_COPRIME"));
    let out = necksum(&["bijection", "affine", "--n", "6", "--set", "2,4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT_COPRIME"));
}
