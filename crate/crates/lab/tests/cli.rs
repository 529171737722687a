use std::process::Command;

use filling_lab::Report;

fn lab(args: &[&str]) -> (i32, String) {
    let out =
        Command::new(env!("CARGO_BIN_EXE_filling-lab")).args(args).env("FILLING_LAB_THREADS", "2").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn certified_run_exits_zero_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (code, stdout) = lab(&["tree", "--u", "x", "--v", "y", "--seed", "4", "--out", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.seed, 4);
    assert_eq!(lab(&["recheck", p]).0, 0);
}

#[test]
fn sampled_run_exits_one() {
    let (code, stdout) = lab(&["plane", "--q", "7", "--samples", "50"]);
    assert_eq!(code, 1);
    assert!(Report::from_json(&stdout).is_ok());
}

#[test]
fn failed_recheck_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    assert_eq!(lab(&["constants", "--n", "3", "--epsilon", "1/50", "--out", p]).0, 0);
    let text = std::fs::read_to_string(&path).unwrap().replacen("\"holds\": true", "\"holds\": false", 1);
    std::fs::write(&path, text).unwrap();
    assert_eq!(lab(&["recheck", p]).0, 2);
}

#[test]
fn errors_exit_three() {
    assert_eq!(lab(&["projective", "--k", "2"]).0, 3);
    assert_eq!(lab(&["plane", "--q", "6"]).0, 3);
    assert_eq!(lab(&["recheck", "/nonexistent/report.json"]).0, 3);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"arena":"projective","n":2,"epsilon":"1/10","trials":3,"samples":20,"seed":8}"#).unwrap();
    let (code, stdout) = lab(&["projective", "--config", cfg.to_str().unwrap(), "--seed", "9"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&stdout).unwrap();
    assert_eq!((r.seed, r.inputs.trials, r.obstructions[0].cases), (9, Some(3), 3));
    assert_eq!(lab(&["tree", "--config", cfg.to_str().unwrap()]).0, 3);
}
