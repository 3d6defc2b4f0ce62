use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formal-poisson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sl2_solve_passes() {
    let o = bin(&["--algebra", "sl2", "--degree", "4", "--checks", "solve"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass  solve"));
}

#[test]
fn abelian_pushforward_reports_not_factorizable() {
    let o = bin(&["--algebra", "abelian2", "--degree", "3", "--checks", "solve,pushforward", "--output", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results[0]["check"], "pushforward");
    assert_eq!(results[0]["status"], "error");
    assert_eq!(results[1]["check"], "solve");
    assert_eq!(results[1]["status"], "pass");
}

#[test]
fn fm_at_one_half() {
    let o = bin(&["--degree", "3", "--checks", "fm", "--nu", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fm[nu=1/2]"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["--degree", "0"][..],
        &["--degree", "7"],
        &["--algebra", "e8"],
        &["--checks", "solve,bogus"],
        &["--nu", "0.5"],
        &["--output", "yaml"],
        &["--algebra", "/nonexistent/algebra.json"],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_algebra_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"dim\": 2,\n  \"basis\": [\"a\"],\n").unwrap();
    let o = bin(&["--algebra", path.to_str().unwrap(), "--checks", "cyb"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn algebra_file_round_trips_sl2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl2.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "basis": ["e", "f", "h"],
            "brackets": [[2, 0, 0, "2"], [2, 1, 1, "-2"], [0, 1, 2, "1"]],
            "r": [[0, 1, "1"], [2, 2, "1/4"]]}"#,
    )
    .unwrap();
    let o = bin(&["--algebra", path.to_str().unwrap(), "--degree", "3", "--checks", "cyb,solve,pushforward"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_output_is_deterministic_and_matches_golden() {
    let args = ["--algebra", "sl2", "--degree", "4", "--seed", "0", "--trace", "--output", "json"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let golden = include_str!("golden/sl2_n4.json");
    assert_eq!(stdout(&a), golden);
}

#[test]
fn timings_are_opt_in() {
    let o = bin(&["--degree", "2", "--checks", "solve", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timings"].is_null());
    let o = bin(&["--degree", "2", "--checks", "solve", "--output", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timings"]["solver"].is_number());
}

#[test]
fn other_seeds_pass_with_same_solution() {
    let run = |seed: &str| {
        let o = bin(&["--degree", "3", "--checks", "gauge", "--seed", seed, "--output", "json"]);
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap()
    };
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a["solution"], b["solution"]);
    assert_eq!(a["results"], b["results"]);
}
