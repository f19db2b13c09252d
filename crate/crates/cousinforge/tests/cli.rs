use std::path::Path;
use std::process::{Command, Output};

fn cousinforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cousinforge"))
        .args(args)
        .env_remove("COUSINFORGE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const ARC: [&str; 8] = ["--f", "y", "--f1", "1", "--g", "x", "--g1", "0"];

#[test]
fn check_square_commutes() {
    let mut args = vec!["check-square"];
    args.extend(ARC);
    args.extend(["--point", "0,0"]);
    let o = cousinforge(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("commutes: true"));
}

#[test]
fn opposite_boundary_sign_gives_false() {
    let mut args = vec!["--boundary-sign", "-", "check-square"];
    args.extend(ARC);
    args.extend(["--point", "0,0"]);
    let o = cousinforge(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("commutes: false"));
}

#[test]
fn tame_prints_the_symbol() {
    let o = cousinforge(&["tame", "--place", "0", "--f", "t", "--g", "t"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn exit_codes() {
    let unsplit = cousinforge(&["reciprocity", "--f", "t^2+1", "--g", "t"]);
    assert_eq!(unsplit.status.code(), Some(3));
    let off_support = cousinforge(&[
        "check-square",
        "--f",
        "y",
        "--f1",
        "1",
        "--g",
        "x",
        "--g1",
        "0",
        "--point",
        "1,0",
    ]);
    assert_eq!(off_support.status.code(), Some(2));
    let garbage = cousinforge(&["tame", "--place", "0", "--f", "t^(", "--g", "t"]);
    assert_eq!(garbage.status.code(), Some(4));
    let non_member = cousinforge(&["gb", "x^2-y", "x*y-1", "--member", "x"]);
    assert_eq!(non_member.status.code(), Some(1));
}

#[test]
fn json_and_human_agree() {
    let human = cousinforge(&[
        "tangent-divisor",
        "--f",
        "y",
        "--f1",
        "x^2",
        "--g",
        "x",
        "--g1",
        "3",
    ]);
    let json = cousinforge(&[
        "--json",
        "tangent-divisor",
        "--f",
        "y",
        "--f1",
        "x^2",
        "--g",
        "x",
        "--g1",
        "3",
    ]);
    let rec: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let text = stdout(&human);
    assert!(text.contains(&format!("class: {}", rec["class"].as_str().unwrap())));
    assert!(text.contains(&format!("zero: {}", rec["zero"])));
}

#[test]
fn cyclic_rank_record_fields() {
    let o = cousinforge(&[
        "--json", "cyclic", "rank", "--theory", "hc", "--base", "Q[x]", "--thick", "1", "--n", "2",
        "--d", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["records"][0];
    for key in [
        "theory",
        "base",
        "j",
        "n",
        "d",
        "i",
        "computed",
        "predicted",
        "source",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["computed"], r["predicted"]);
}

#[test]
fn cyclic_verify_suite() {
    let o = cousinforge(&["cyclic", "verify", "--suite", "s41"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS hc-hn-totals")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn task_file_runs_in_order_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let task = dir.path().join("tasks.json");
    std::fs::write(
        &task,
        r#"{
          "settings": { "order": "lex" },
          "commands": [
            { "command": "tame", "place": "0", "f": "t", "g": "1 - t" },
            { "command": "cyclic-rank", "theory": "hn", "base": "Q[x]", "n": 2, "d": 1 },
            { "command": "gb", "generators": ["x^2 - y", "x*y - 1"] }
          ]
        }"#,
    )
    .unwrap();
    let cache = dir.path().join("cache");
    let o = Command::new(env!("CARGO_BIN_EXE_cousinforge"))
        .args(["--json", "run", task.to_str().unwrap()])
        .env("COUSINFORGE_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["command"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["tame", "cyclic-rank", "gb"]);
    assert_eq!(v[2]["order"], "lex");
    assert!(has_files(&cache));
}

fn has_files(dir: &Path) -> bool {
    std::fs::read_dir(dir).is_ok_and(|mut d| d.next().is_some())
}

#[test]
fn malformed_task_file() {
    let dir = tempfile::tempdir().unwrap();
    let task = dir.path().join("bad.json");
    std::fs::write(
        &task,
        r#"{ "commands": [ { "command": "tame", "colour": 1 } ] }"#,
    )
    .unwrap();
    let o = cousinforge(&["run", task.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}
