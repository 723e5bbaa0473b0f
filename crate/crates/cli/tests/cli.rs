use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siegel-kr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn adm_rank_one_has_three_rows() {
    let out = run(&["adm", "--g", "1"]);
    assert!(out.status.success());
    let rows = stdout(&out).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 3);
}

#[test]
fn adm_json_is_versioned() {
    let out = run(&["adm", "--g", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["count"], 13);
    assert_eq!(v["rows"][0]["length"], 0);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--g", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 9);
    assert!(!text.contains("FAIL"));
}

#[test]
fn rank_one_trace_is_numeric() {
    let out = run(&[
        "trace", "--g", "1", "--parahoric", "1", "--highest", "0;0", "--weight", "0", "--r", "1", "--q", "5",
    ]);
    assert!(out.status.success());
    let values: Vec<String> = stdout(&out)
        .lines()
        .filter_map(|l| l.split("value=").nth(1).map(str::to_string))
        .collect();
    assert_eq!(values, vec!["-4", "1", "1", "-1*sqrt(5)"]);
}

#[test]
fn trace_json_marks_symbolic_cells() {
    let out = run(&["trace", "--g", "2", "--q", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 17);
    assert_eq!(cells.iter().filter(|c| c["exact"] == false).count(), 1);
}

#[test]
fn kostant_siegel_dimensions() {
    let out = run(&["kostant", "--g", "2", "--flag", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 3, 3, 1]);
}

#[test]
fn strata_dot_lists_incidences() {
    let out = run(&["strata", "--g", "2", "--dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("style=dashed").count(), 4);
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        vec!["adm", "--g", "2", "--parahoric", "5"],
        vec!["adm", "--g", "0"],
        vec!["trace", "--g", "1", "--q", "4"],
        vec!["trace", "--g", "1", "--q", "5", "--level", "2"],
        vec!["trace", "--g", "1", "--q", "5", "--gamma0", "1,2;3"],
        vec!["kostant", "--g", "2", "--flag", "2,1"],
        vec!["hecke", "zmu", "--g", "2", "--basis", "x"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["adm", "--g", "2", "--json"],
        vec!["hecke", "zmu", "--g", "2", "--basis", "kl", "--json"],
        vec!["strata", "--g", "2", "--json"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn level_divisible_by_p_warns() {
    let out = run(&["trace", "--g", "1", "--q", "3", "--level", "6"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("divides the level"));
}
