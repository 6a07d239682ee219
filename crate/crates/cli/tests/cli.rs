use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn ncgb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgb")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = ncgb(&all);
    (serde_json::from_str(&stdout(&o)).unwrap(), o.status.code().unwrap())
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ncgb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn normal_forms() {
    let cases = [
        (vec!["--builtin", "small", "--l", "1", "b0 a0 b0 a0 + a0 b0 a0 b0"], "0"),
        (vec!["--builtin", "small", "1"], "1"),
        (vec!["--builtin", "big", "--n", "3", "--p", "2", "--expbound", "3", "e12_1 e23_1"], "e23_1 e12_1 + e13_1"),
    ];
    for (args, want) in cases {
        let mut all = vec!["nf"];
        all.extend(args);
        let (v, code) = json(&all);
        assert_eq!(code, 0);
        assert_eq!(v["tables"]["normal_form"], want);
    }
}

#[test]
fn parse_errors_exit_two() {
    let o = ncgb(&["nf", "--builtin", "small", "a0 + c7"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(ncgb(&["nf", "b0"]).status.code(), Some(2));
}

#[test]
fn completeness_checks() {
    assert_eq!(ncgb(&["check", "--builtin", "small", "--l", "2"]).status.code(), Some(0));
    assert_eq!(
        ncgb(&["check", "--builtin", "big", "--n", "4", "--p", "2", "--expbound", "1"]).status.code(),
        Some(0)
    );
    let (v, code) = json(&["check", "--builtin", "small", "--l", "2", "--drop", "b0 a0 b0 a0"]);
    assert_eq!(code, 1);
    assert!(!v["tables"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn shown_documents_load_back() {
    let o = ncgb(&["show", "--builtin", "small", "--l", "2"]);
    let path = temp_file("s2.json", &stdout(&o));
    let p = path.to_str().unwrap();
    assert_eq!(ncgb(&["check", "--file", p]).status.code(), Some(0));
    let (a, _) = json(&["nf", "--file", p, "a2 b1 a1 b1 a1"]);
    let (b, _) = json(&["nf", "--builtin", "small", "--l", "2", "a2 b1 a1 b1 a1"]);
    assert_eq!(a["tables"], b["tables"]);
}

#[test]
fn anick_on_a_single_square() {
    let doc = r#"{"p": 3, "alphabet": [{"name": "a", "degree": 1, "rank": 0}], "relations": [[[1, ["a", "a"]]]]}"#;
    let path = temp_file("square.json", doc);
    let (v, code) = json(&["anick", "--file", path.to_str().unwrap(), "--D", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["tables"]["chains"]["T2"], serde_json::json!(["a a a"]));
    assert_eq!(v["tables"]["differentials"]["d2"]["a a a"], "a.a a");
    assert_eq!(v["tables"]["differentials"]["d1"]["a a"], "a.a");
}

#[test]
fn betti_table_and_bounds() {
    let o = ncgb(&["betti", "--builtin", "small", "--K", "3", "--D", "16"]);
    assert_eq!(o.status.code(), Some(2));
    let (v, code) = json(&["betti", "--builtin", "small", "--K", "4", "--D", "16", "--minimal"]);
    assert_eq!(code, 0);
    let rows: BTreeSet<(u64, u64, u64)> = v["tables"]["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r[0].as_u64().unwrap(), r[1].as_u64().unwrap(), r[2].as_u64().unwrap()))
        .collect();
    let mut want = BTreeSet::from([(0, 0, 1)]);
    for d in 1..=16u64 {
        match d.count_ones() {
            1 => {
                want.insert((1, d, 2));
                if d > 1 {
                    want.insert((2, d, 2));
                }
            }
            2 => {
                want.insert((2, d, 4));
            }
            _ => {}
        }
    }
    assert_eq!(rows, want);
}

#[test]
fn unminimized_rows_contain_minimal_rows() {
    let degrees = |minimal: &str| -> BTreeSet<(u64, u64)> {
        let (v, _) = json(&["betti", "--builtin", "small", "--D", "16", minimal]);
        v["tables"]["betti"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r[0] == 1 || r[0] == 2)
            .map(|r| (r[0].as_u64().unwrap(), r[1].as_u64().unwrap()))
            .collect()
    };
    let min = degrees("--minimal");
    let all = degrees("--no-minimal");
    assert!(min.is_subset(&all));
}

#[test]
fn json_is_byte_stable() {
    let run = || {
        let (mut v, _) = json(&["anick", "--builtin", "small", "--K", "2", "--D", "7"]);
        v.as_object_mut().unwrap().remove("timing_seconds");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn conjectures_always_succeed() {
    let (v, code) = json(&["conjectures"]);
    assert_eq!(code, 0);
    assert_eq!(v["tables"]["scans"]["shift"]["verdict"], "consistent up to bound");
}

#[test]
fn verify_paper_passes() {
    let o = ncgb(&["verify-paper", "--cases", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("criterion 7d  FAIL [non-gating]"));
}
